#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgelab/errors.hpp"
#include "edgelab/report.hpp"

using namespace edgelab;
namespace fs = std::filesystem;

namespace {

FredholmReport sample_report() {
    FredholmReport r;
    r.gamma = 0.25;
    r.kernel_dim = 1;
    r.cokernel_dim = 0;
    r.smin_trace = {{0, 0.1}, {1, 0.017}, {2, 7.0e-4}, {3, 2.6e-6}};
    r.case_label = CaseLabel::Case1;
    r.mapping_spaces = "K^{2,0.25}(R+) → K^{0,-1.75}(R+)";
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / ("edgelab_report_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Csv, OneReportOneRow) {
    const Record rec = to_record(sample_report());
    const std::string csv = to_csv(std::vector<Record>{rec});
    std::size_t lines = 0;
    for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) ++lines;
    EXPECT_EQ(lines, 2u);
    EXPECT_EQ(csv.substr(0, csv.find("\r\n")),
              "gamma,kernel_dim,cokernel_dim,smin_trace,case_label,mapping_spaces");
}

TEST(Csv, EmptyListIsAnError) {
    try {
        (void)to_csv(std::vector<Record>{});
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_STREQ(e.what(), "no records");
    }
    EXPECT_THROW(emit_csv(std::vector<Record>{}, scratch() / "x.csv"), InvalidArgument);
}

TEST(Csv, QuotingAndNumbers) {
    Record r = Record::object();
    r["text"] = "a,\"b\"";
    r["x"] = 0.1;
    r["n"] = 7;
    r["flag"] = true;
    r["none"] = nullptr;
    EXPECT_EQ(to_csv(std::vector<Record>{r}),
              "text,x,n,flag,none\r\n\"a,\"\"b\"\"\",0.10000000000000001,7,true,\r\n");
    EXPECT_EQ(std::strtod(format_number(0.1).c_str(), nullptr), 0.1);
    EXPECT_EQ(format_number(1.0), "1");
}

TEST(Csv, RejectsHeterogeneousRecords) {
    Record a = Record::object(), b = Record::object();
    a["x"] = 1;
    b["y"] = 1;
    EXPECT_THROW((void)to_csv(std::vector<Record>{a, b}), InvalidArgument);
}

TEST(Csv, ReemitIsByteIdentical) {
    const fs::path dir = scratch();
    const std::vector<Record> rows = {to_record(sample_report()), to_record(sample_report())};
    emit_csv(rows, dir / "a.csv");
    emit_csv(rows, dir / "b.csv");
    EXPECT_EQ(file_digest(dir / "a.csv"), file_digest(dir / "b.csv"));
}

TEST(Csv, UnwritablePath) {
    EXPECT_THROW(emit_csv(std::vector<Record>{to_record(sample_report())},
                          "/nonexistent/dir/out.csv"),
                 IoError);
}

TEST(Json, ReportHasEveryField) {
    const Record j = to_record(sample_report());
    for (const char* k : {"gamma", "kernel_dim", "cokernel_dim", "smin_trace", "case_label",
                          "mapping_spaces"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["case_label"], "Case1");
    EXPECT_EQ(j["smin_trace"].size(), 4u);
}

TEST(Json, ManifestRoundTrip) {
    RunManifest m;
    m.timestamp = "2026-01-02T03:04:05Z";
    m.config = Record::parse(R"({"mesh": {"r_max": 20, "n_points": 128}, "edge": {"gamma": 0.25}})");
    m.input_digests = {{"profile.json", sha256_hex("x")}};
    m.seed = 17;
    const std::string text = to_json_text(to_json(m));
    const RunManifest back = manifest_from_json(Record::parse(text));
    EXPECT_EQ(to_json_text(to_json(back)), text);
    EXPECT_EQ(manifest_digest(back), manifest_digest(m));

    const fs::path dir = scratch();
    emit_json(to_json(m), dir / "m.json");
    EXPECT_EQ(slurp(dir / "m.json"), text);
}

TEST(Json, SeedsChangeDigest) {
    RunManifest a, b;
    a.seed = 1;
    b.seed = 2;
    EXPECT_NE(manifest_digest(a), manifest_digest(b));
    RunManifest c = a;
    c.timestamp = "1999-01-01T00:00:00Z";
    EXPECT_EQ(manifest_digest(a), manifest_digest(c));
}

TEST(Json, DoublesRoundTrip) {
    Record r = Record::object();
    r["x"] = 0.1 + 0.2;
    r["y"] = 1e-300;
    const Record back = Record::parse(to_json_text(r));
    EXPECT_EQ(back["x"].get<double>(), 0.1 + 0.2);
    EXPECT_EQ(back["y"].get<double>(), 1e-300);
}

TEST(Json, EmptyIsAnError) {
    EXPECT_THROW(emit_json(Record::array(), scratch() / "e.json"), InvalidArgument);
}

TEST(Digest, KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Timestamp, HonoursSourceDateEpoch) {
    ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
    EXPECT_EQ(utc_timestamp(), "1970-01-02T00:00:00Z");
    ::unsetenv("SOURCE_DATE_EPOCH");
    EXPECT_EQ(utc_timestamp().size(), 20u);
}

TEST(Records, OtherTypes) {
    MembershipVerdict v;
    v.verdict = Verdict::divergent;
    v.norm_trace = {{0, 1.0}, {1, 2.0}};
    v.fitted_rate = 0.2;
    const Record r = to_record(v, 0, 0.6);
    EXPECT_EQ(r["verdict"], "divergent");
    EXPECT_EQ(r["fitted_rate"], 0.2);

    DtNSpectrum s;
    s.modes = {{0, 0.0}, {1, 1.0}};
    const auto rows = to_records(s);
    EXPECT_EQ(to_csv(rows), "n,lambda_n\r\n0,0\r\n1,1\r\n");

    Certification c;
    c.certified = true;
    c.mode = BorderMode::coboundary_column;
    EXPECT_EQ(to_record(c)["mode"], "coboundary_column");
}
