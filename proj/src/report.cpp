#include "edgelab/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "edgelab/errors.hpp"

namespace edgelab {
namespace {

std::string csv_field(const Record& v) {
    std::string s;
    if (v.is_null()) return s;
    if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_boolean())
        s = v.get<bool>() ? "true" : "false";
    else if (v.is_number_integer() || v.is_number_unsigned())
        s = v.dump();
    else if (v.is_number_float())
        s = format_number(v.get<double>());
    else
        s = v.dump();
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

Record trace_json(const std::vector<std::pair<int, double>>& trace, const char* key) {
    Record a = Record::array();
    for (const auto& [level, v] : trace) a.push_back({{"level", level}, {key, v}});
    return a;
}

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string utc_timestamp() {
    std::time_t t;
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH"); e && *e)
        t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
    else
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Record to_json(const RunManifest& m) {
    Record j = Record::object();
    j["tool_version"] = m.tool_version;
    j["timestamp"] = m.timestamp;
    j["config"] = m.config;
    Record d = Record::array();
    for (const auto& [path, digest] : m.input_digests) d.push_back({{"path", path}, {"sha256", digest}});
    j["input_digests"] = d;
    j["seed"] = m.seed ? Record(*m.seed) : Record(nullptr);
    return j;
}

RunManifest manifest_from_json(const Record& j) {
    RunManifest m;
    try {
        m.tool_version = j.at("tool_version").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        m.config = j.at("config");
        for (const auto& e : j.at("input_digests"))
            m.input_digests.emplace_back(e.at("path").get<std::string>(),
                                         e.at("sha256").get<std::string>());
        if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::int64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("manifest: ") + ex.what());
    }
    return m;
}

std::string manifest_digest(const RunManifest& m) {
    Record j = to_json(m);
    j.erase("timestamp");
    return sha256_hex(j.dump());
}

std::string to_csv(std::span<const Record> records) {
    if (records.empty()) throw InvalidArgument("no records");
    std::vector<std::string> keys;
    for (const auto& [k, v] : records.front().items()) keys.push_back(k);
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + csv_field(keys[i]);
    out += "\r\n";
    for (const auto& r : records) {
        if (!r.is_object() || r.size() != keys.size())
            throw InvalidArgument("records are not homogeneous");
        std::size_t i = 0;
        for (const auto& [k, v] : r.items()) {
            if (k != keys[i]) throw InvalidArgument("records are not homogeneous");
            out += (i ? "," : "") + csv_field(v);
            ++i;
        }
        out += "\r\n";
    }
    return out;
}

std::string to_json_text(const Record& record) { return record.dump(2) + "\n"; }

void emit_csv(std::span<const Record> records, const std::filesystem::path& path) {
    write_file(path, to_csv(records));
}

void emit_json(const Record& record, const std::filesystem::path& path) {
    if (record.is_null() || (record.is_array() && record.empty()))
        throw InvalidArgument("no records");
    write_file(path, to_json_text(record));
}

Record to_record(const FredholmReport& r) {
    Record j = Record::object();
    j["gamma"] = r.gamma;
    j["kernel_dim"] = r.kernel_dim;
    j["cokernel_dim"] = r.cokernel_dim;
    j["smin_trace"] = trace_json(r.smin_trace, "smin");
    j["case_label"] = to_string(r.case_label);
    j["mapping_spaces"] = r.mapping_spaces;
    return j;
}

Record to_record(const Certification& c) {
    Record j = Record::object();
    j["gamma"] = c.gamma;
    j["mode"] = to_string(c.mode);
    j["certified"] = c.certified;
    j["smin_trace"] = trace_json(c.smin_trace, "smin");
    j["mapping_spaces"] = c.mapping_spaces;
    return j;
}

Record to_record(const MembershipVerdict& v, int s, double gamma) {
    Record j = Record::object();
    j["s"] = s;
    j["gamma"] = gamma;
    j["verdict"] = to_string(v.verdict);
    j["norm_trace"] = trace_json(v.norm_trace, "norm");
    j["fitted_rate"] = v.fitted_rate ? Record(*v.fitted_rate) : Record(nullptr);
    return j;
}

Record to_record(const SpectrumComparison& c) {
    Record j = Record::object();
    j["max_abs_dev"] = c.max_abs_dev;
    j["distinguishable"] = c.distinguishable;
    return j;
}

std::vector<Record> to_records(const DtNSpectrum& s) {
    std::vector<Record> out;
    for (const auto& [n, lam] : s.modes) {
        Record j = Record::object();
        j["n"] = n;
        j["lambda_n"] = lam;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace edgelab
