#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgelab/calderon.hpp"
#include "edgelab/fredholm.hpp"
#include "edgelab/wspace.hpp"

namespace edgelab {

/// Flat or nested record; keys keep insertion order.
using Record = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "edgelab 0.1.0";

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string timestamp;
    Record config = Record::object();
    std::vector<std::pair<std::string, std::string>> input_digests;  ///< (path, sha256)
    std::optional<std::int64_t> seed;
};

[[nodiscard]] Record to_json(const RunManifest& m);
[[nodiscard]] RunManifest manifest_from_json(const Record& j);
/// SHA-256 over everything except the timestamp.
[[nodiscard]] std::string manifest_digest(const RunManifest& m);
/// UTC now in ISO-8601, or SOURCE_DATE_EPOCH when that is set.
[[nodiscard]] std::string utc_timestamp();

[[nodiscard]] std::string sha256_hex(std::string_view data);
[[nodiscard]] std::string file_digest(const std::filesystem::path& path);

/// %.17g
[[nodiscard]] std::string format_number(double x);

/// RFC-4180 text with a header row.  Nested values are written as compact JSON.
[[nodiscard]] std::string to_csv(std::span<const Record> records);
[[nodiscard]] std::string to_json_text(const Record& record);

void emit_csv(std::span<const Record> records, const std::filesystem::path& path);
void emit_json(const Record& record, const std::filesystem::path& path);

[[nodiscard]] Record to_record(const FredholmReport& r);
[[nodiscard]] Record to_record(const Certification& c);
[[nodiscard]] Record to_record(const MembershipVerdict& v, int s, double gamma);
[[nodiscard]] Record to_record(const SpectrumComparison& c);
/// One row per mode: (n, lambda_n).
[[nodiscard]] std::vector<Record> to_records(const DtNSpectrum& s);

}  // namespace edgelab
