// Comma-separated input formats.
//
//   samples        one numeric column, optional header line
//   ccdf           two columns: income, fraction of population >= income;
//                  optional header line
//   country panel  header required; columns code, population, quantity and
//                  optionally year (any order, case-insensitive names)
//
// Numbers use '.' as decimal point; thousands separators are rejected.
#pragma once

#include "econophys/core.hpp"
#include "econophys/inequality.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace econophys::ingest {

class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::size_t column, const std::string& message);

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string file_;
    std::size_t line_;
    std::size_t column_;
};

struct DatasetManifest {
    enum class Kind { samples, ccdf, country_panel };

    Kind kind = Kind::samples;
    std::optional<int> year;
    std::string source;
    std::size_t rows = 0;
    std::string unit;
};

MoneySample parse_samples(std::string_view text, std::string_view source = "<input>");
CcdfCurve parse_ccdf(std::string_view text, std::string_view source = "<input>");

struct CountryPanel {
    std::map<int, std::vector<ineq::CountryRecord>> years;
    std::vector<std::string> warnings;  // rows dropped for zero population
};

/// Parses a panel. Rows without a year column are assigned `default_year`,
/// which is then required.
CountryPanel parse_country_panel(std::string_view text, std::string_view source = "<input>",
                                 std::optional<int> default_year = std::nullopt);

/// Records of one year; the year column, when present, selects the rows.
std::vector<ineq::CountryRecord> parse_country_panel(std::string_view text, int year,
                                                     std::string_view source = "<input>");

std::string write_samples(const MoneySample& sample);
std::string write_ccdf(const CcdfCurve& curve);
std::string write_country_panel(const CountryPanel& panel);

std::string read_file(const std::filesystem::path& path);

struct BatchEntry {
    DatasetManifest manifest;
    MoneySample sample;
};

struct SampleBatch {
    std::vector<BatchEntry> entries;
    std::vector<std::string> failures;

    std::size_t validated() const { return entries.size(); }
};

/// Loads every `<CODE>_<YEAR>.csv` sample file in a directory (one file per
/// country-year). Files that fail to parse are listed in `failures`.
SampleBatch load_sample_batch(const std::filesystem::path& directory, std::string unit = {});

}  // namespace econophys::ingest
