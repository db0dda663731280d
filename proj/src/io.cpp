#include "paretogeo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace paretogeo::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    const std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size()) return std::nullopt;
    return value;
}

double require_positive(std::string_view text, std::size_t line) {
    const auto value = parse_real(text);
    if (!value) throw ParseError(line, "not a number: '" + std::string(trim(text)) + "'");
    if (!(*value > 0.0) || !std::isfinite(*value)) {
        throw ParseError(line, "value must be positive and finite, got " + std::string(trim(text)));
    }
    return *value;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        out.emplace_back(trim(line.substr(pos, next == std::string_view::npos ? next : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

SampleSet read_samples(std::istream& in) {
    std::vector<double> values;
    std::optional<std::size_t> csv_column;
    std::size_t expected_fields = 1;
    bool seen_first = false;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (!seen_first) {
            seen_first = true;
            if (!parse_real(line)) {
                const auto header = split(line, ',');
                const auto it = std::find(header.begin(), header.end(), "x");
                if (it == header.end()) {
                    throw ParseError(line_no, "header has no column named 'x'");
                }
                csv_column = static_cast<std::size_t>(it - header.begin());
                expected_fields = header.size();
                continue;
            }
        }

        if (csv_column) {
            const auto fields = split(line, ',');
            if (fields.size() != expected_fields) {
                throw ParseError(line_no, "expected " + std::to_string(expected_fields) +
                                              " fields, got " + std::to_string(fields.size()));
            }
            values.push_back(require_positive(fields[*csv_column], line_no));
        } else {
            values.push_back(require_positive(line, line_no));
        }
    }
    if (values.empty()) throw ParseError(0, "no observations in input");
    return SampleSet(std::move(values));
}

SampleSet read_sample_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path.string());
    return read_samples(in);
}

std::string format_fixed(double value, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << value;
    return os.str();
}

std::string format_exact(double value) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
    return os.str();
}

void write_samples(std::ostream& out, const SampleSet& xs) {
    for (double x : xs.values()) out << format_exact(x) << '\n';
}

nlohmann::json stats_to_json(const SufficientStats& s) {
    return {{"n", s.n}, {"q1", s.q1}, {"q2", s.q2}};
}

SufficientStats stats_from_json(const nlohmann::json& j) {
    return SufficientStats(j.at("n").get<std::size_t>(), j.at("q1").get<double>(),
                           j.at("q2").get<double>());
}

nlohmann::json params_to_json(const ParetoParams& p) {
    return {{"alpha", p.alpha()}, {"beta", p.beta()}};
}

nlohmann::json summary_to_json(const bayes::PosteriorSummary& row) {
    nlohmann::json j = {{"estimator", bayes::to_string(row.estimator)},
                        {"conditioning", bayes::to_string(row.conditioning)},
                        {"alpha", row.alpha_hat},
                        {"beta", row.beta_hat}};
    j["distance"] = row.distance_to_reference ? nlohmann::json(*row.distance_to_reference)
                                              : nlohmann::json(nullptr);
    return j;
}

bayes::PosteriorSummary summary_from_json(const nlohmann::json& j) {
    const auto estimator = bayes::parse_estimator(j.at("estimator").get<std::string>());
    const auto conditioning = bayes::parse_conditioning(j.at("conditioning").get<std::string>());
    if (!estimator || !conditioning) {
        throw ParseError(0, "unknown estimator or conditioning in summary row");
    }
    bayes::PosteriorSummary row{*estimator, *conditioning, j.at("alpha").get<double>(),
                                j.at("beta").get<double>(), std::nullopt};
    if (j.contains("distance") && !j.at("distance").is_null()) {
        row.distance_to_reference = j.at("distance").get<double>();
    }
    return row;
}

void write_summary_csv(std::ostream& out, const std::vector<bayes::PosteriorSummary>& rows,
                       int decimals) {
    out << "estimator,conditioning,alpha,beta,distance\n";
    for (const auto& row : rows) {
        out << bayes::to_string(row.estimator) << ',' << bayes::to_string(row.conditioning) << ','
            << format_fixed(row.alpha_hat, decimals) << ',' << format_fixed(row.beta_hat, decimals)
            << ',';
        if (row.distance_to_reference) out << format_fixed(*row.distance_to_reference, decimals);
        out << '\n';
    }
}

std::vector<bayes::PosteriorSummary> read_summary_csv(std::istream& in) {
    std::vector<bayes::PosteriorSummary> rows;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (trim(raw).empty()) continue;
        const auto fields = split(raw, ',');
        if (line_no == 1) {
            if (fields.size() != 5 || fields[0] != "estimator") {
                throw ParseError(line_no, "unexpected summary CSV header");
            }
            continue;
        }
        if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields");
        const auto estimator = bayes::parse_estimator(fields[0]);
        const auto conditioning = bayes::parse_conditioning(fields[1]);
        const auto alpha = parse_real(fields[2]);
        const auto beta = parse_real(fields[3]);
        if (!estimator || !conditioning || !alpha || !beta) {
            throw ParseError(line_no, "malformed summary row");
        }
        bayes::PosteriorSummary row{*estimator, *conditioning, *alpha, *beta, std::nullopt};
        if (!fields[4].empty()) {
            const auto d = parse_real(fields[4]);
            if (!d) throw ParseError(line_no, "malformed distance");
            row.distance_to_reference = *d;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_ball_csv(std::ostream& out, const std::vector<geometry::Polyline>& rays) {
    out << "ray_index,t,alpha,beta,x,y\n";
    for (const auto& ray : rays) {
        for (const auto& pt : ray) {
            out << pt.ray_index << ',' << format_exact(pt.t) << ',' << format_exact(pt.alpha) << ','
                << format_exact(pt.beta) << ',' << format_exact(pt.x) << ',' << format_exact(pt.y)
                << '\n';
        }
    }
}

std::vector<double> GridSpec::points() const {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double denom = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / denom;
        out[i] = logarithmic ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                             : start + f * (stop - start);
    }
    out.back() = stop;
    return out;
}

GridSpec parse_grid(std::string_view spec) {
    auto parts = split(spec, ':');
    bool logarithmic = false;
    if (!parts.empty() && parts.front() == "log") {
        logarithmic = true;
        parts.erase(parts.begin());
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("grid spec must be start:stop:count or log:start:stop:count");
    }
    const auto start = parse_real(parts[0]);
    const auto stop = parse_real(parts[1]);
    std::size_t count = 0;
    const auto [ptr, ec] =
        std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (!start || !stop || ec != std::errc{} || ptr != parts[2].data() + parts[2].size() ||
        count < 1) {
        throw std::invalid_argument("grid spec has a malformed number: " + std::string(spec));
    }
    if (!(*start < *stop) && count > 1) {
        throw std::invalid_argument("grid spec requires start < stop");
    }
    if (logarithmic && !(*start > 0.0)) {
        throw std::invalid_argument("logarithmic grid requires start > 0");
    }
    return {*start, *stop, count, logarithmic};
}

}  // namespace paretogeo::io
