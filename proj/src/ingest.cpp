#include "econophys/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace econophys::ingest {

namespace {

struct Field {
    std::string_view text;
    std::size_t column;  // 1-based character position
};

struct Line {
    std::size_t number;
    std::vector<Field> fields;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s, std::size_t& offset)
{
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && is_space(s[e - 1])) --e;
    offset += b;
    return s.substr(b, e - b);
}

// Non-blank lines split on commas. A UTF-8 byte-order mark is skipped.
std::vector<Line> split_lines(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(pos, end - pos);
        std::size_t ignored = 0;
        if (!trim(raw, ignored).empty()) {
            Line line{number, {}};
            std::size_t start = 0;
            while (true) {
                std::size_t comma = raw.find(',', start);
                std::string_view piece = raw.substr(start, comma == std::string_view::npos ? raw.size() - start
                                                                                            : comma - start);
                std::size_t col = start;
                piece = trim(piece, col);
                line.fields.push_back({piece, col + 1});
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            lines.push_back(std::move(line));
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

std::optional<double> to_number(std::string_view s)
{
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<long> to_integer(std::string_view s)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool looks_like_header(const Line& line)
{
    return std::any_of(line.fields.begin(), line.fields.end(),
                       [](const Field& f) { return !to_number(f.text).has_value(); });
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double number_field(const std::string& source, const Line& line, const Field& f, std::string_view what)
{
    auto v = to_number(f.text);
    if (!v) throw ParseError(source, line.number, f.column, std::string(what) + " '" + std::string(f.text) + "' is not a number");
    return *v;
}

}  // namespace

ParseError::ParseError(std::string file, std::size_t line, std::size_t column, const std::string& message)
    : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      file_(std::move(file)),
      line_(line),
      column_(column)
{}

MoneySample parse_samples(std::string_view text, std::string_view source_view)
{
    const std::string source(source_view);
    const auto lines = split_lines(text);
    MoneySample out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.fields.size() != 1) {
            const auto& extra = line.fields[1];
            throw ParseError(source, line.number, extra.column - 1, "expected a single column");
        }
        if (i == 0 && looks_like_header(line)) {
            out.unit_label = std::string(line.fields[0].text);
            continue;
        }
        const double v = number_field(source, line, line.fields[0], "value");
        if (v < 0.0) throw ParseError(source, line.number, line.fields[0].column, "negative value " + std::string(line.fields[0].text));
        out.values.push_back(v);
    }
    if (out.values.empty()) throw ParseError(source, lines.empty() ? 1 : lines.back().number, 1, "no data");
    return out;
}

CcdfCurve parse_ccdf(std::string_view text, std::string_view source_view)
{
    const std::string source(source_view);
    const auto lines = split_lines(text);
    CcdfCurve curve;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.fields.size() != 2) throw ParseError(source, line.number, 1, "expected two columns (income, fraction)");
        if (i == 0 && looks_like_header(line)) continue;
        const double r = number_field(source, line, line.fields[0], "income");
        const double c = number_field(source, line, line.fields[1], "fraction");
        const auto rc = line.fields[0].column;
        const auto cc = line.fields[1].column;
        if (r < 0.0) throw ParseError(source, line.number, rc, "negative income");
        if (c < 0.0 || c > 1.0) throw ParseError(source, line.number, cc, "fraction outside [0,1]");
        if (!curve.points.empty()) {
            const auto& prev = curve.points.back();
            if (!(r > prev.income)) throw ParseError(source, line.number, rc, "income not strictly increasing");
            if (c > prev.fraction) throw ParseError(source, line.number, cc, "fraction increases with income");
        } else if (r == 0.0 && c != 1.0) {
            throw ParseError(source, line.number, cc, "fraction at income 0 must be 1");
        }
        curve.points.push_back({r, c});
    }
    if (curve.points.empty()) throw ParseError(source, lines.empty() ? 1 : lines.back().number, 1, "no data");
    return curve;
}

CountryPanel parse_country_panel(std::string_view text, std::string_view source_view, std::optional<int> default_year)
{
    const std::string source(source_view);
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(source, 1, 1, "no data");

    const auto& header = lines.front();
    std::optional<std::size_t> code_col, pop_col, qty_col, year_col;
    for (std::size_t k = 0; k < header.fields.size(); ++k) {
        const auto name = lower(header.fields[k].text);
        auto assign = [&](std::optional<std::size_t>& slot) {
            if (slot) throw ParseError(source, header.number, header.fields[k].column, "duplicate column '" + name + "'");
            slot = k;
        };
        if (name == "code") assign(code_col);
        else if (name == "population") assign(pop_col);
        else if (name == "quantity") assign(qty_col);
        else if (name == "year") assign(year_col);
    }
    if (!code_col || !pop_col || !qty_col)
        throw ParseError(source, header.number, 1, "panel header must name columns code, population, quantity");
    if (!year_col && !default_year)
        throw ParseError(source, header.number, 1, "panel has no year column and no year was given");

    CountryPanel panel;
    std::map<int, std::set<std::string>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.fields.size() != header.fields.size())
            throw ParseError(source, line.number, 1,
                             "expected " + std::to_string(header.fields.size()) + " columns, found " +
                                 std::to_string(line.fields.size()));
        int year = default_year.value_or(0);
        if (year_col) {
            const auto& f = line.fields[*year_col];
            auto y = to_integer(f.text);
            if (!y) throw ParseError(source, line.number, f.column, "year '" + std::string(f.text) + "' is not an integer");
            year = static_cast<int>(*y);
        }
        const auto& code_f = line.fields[*code_col];
        if (code_f.text.empty()) throw ParseError(source, line.number, code_f.column, "empty country code");
        std::string code(code_f.text);
        const auto& pop_f = line.fields[*pop_col];
        const auto& qty_f = line.fields[*qty_col];
        const double pop = number_field(source, line, pop_f, "population");
        const double qty = number_field(source, line, qty_f, "quantity");
        if (pop < 0.0) throw ParseError(source, line.number, pop_f.column, "negative population");
        if (qty < 0.0) throw ParseError(source, line.number, qty_f.column, "negative quantity");
        if (!seen[year].insert(code).second)
            throw ParseError(source, line.number, code_f.column,
                             "duplicate country code '" + code + "' in year " + std::to_string(year));
        if (pop == 0.0) {
            panel.warnings.push_back(source + ":" + std::to_string(line.number) + ": dropped " + code + " (" +
                                     std::to_string(year) + "): zero population");
            continue;
        }
        panel.years[year].push_back(ineq::CountryRecord::make(std::move(code), pop, qty));
    }
    if (panel.years.empty()) throw ParseError(source, lines.back().number, 1, "no usable records");
    return panel;
}

std::vector<ineq::CountryRecord> parse_country_panel(std::string_view text, int year, std::string_view source)
{
    auto panel = parse_country_panel(text, source, year);
    auto it = panel.years.find(year);
    if (it == panel.years.end()) throw Error(std::string(source) + ": no records for year " + std::to_string(year));
    return std::move(it->second);
}

std::string write_samples(const MoneySample& sample)
{
    std::string out = (sample.unit_label.empty() ? std::string("value") : sample.unit_label) + "\n";
    for (double v : sample.values) out += format_number(v) + "\n";
    return out;
}

std::string write_ccdf(const CcdfCurve& curve)
{
    std::string out = "income,fraction\n";
    for (const auto& p : curve.points) out += format_number(p.income) + "," + format_number(p.fraction) + "\n";
    return out;
}

std::string write_country_panel(const CountryPanel& panel)
{
    std::string out = "year,code,population,quantity\n";
    for (const auto& [year, records] : panel.years)
        for (const auto& r : records)
            out += std::to_string(year) + "," + r.code + "," + format_number(r.population) + "," +
                   format_number(r.quantity) + "\n";
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SampleBatch load_sample_batch(const std::filesystem::path& directory, std::string unit)
{
    if (!std::filesystem::is_directory(directory)) throw Error(directory.string() + " is not a directory");
    static const std::regex name_re(R"(([A-Za-z0-9]+)_(\d{4})\.csv)");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    SampleBatch batch;
    for (const auto& path : files) {
        const auto name = path.filename().string();
        std::smatch m;
        if (!std::regex_match(name, m, name_re)) continue;
        try {
            auto sample = parse_samples(read_file(path), path.string());
            DatasetManifest manifest;
            manifest.kind = DatasetManifest::Kind::samples;
            manifest.year = std::stoi(m[2]);
            manifest.source = m[1];
            manifest.rows = sample.values.size();
            manifest.unit = unit;
            if (!unit.empty()) sample.unit_label = unit;
            batch.entries.push_back({std::move(manifest), std::move(sample)});
        } catch (const Error& e) {
            batch.failures.push_back(e.what());
        }
    }
    return batch;
}

}  // namespace econophys::ingest
