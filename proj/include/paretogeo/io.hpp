#pragma once

#include "paretogeo/bayes.hpp"
#include "paretogeo/geometry.hpp"
#include "paretogeo/model.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace paretogeo::io {

/// Input error tied to a 1-based line number (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads either one positive real per line, or a CSV with a header row
/// containing a column named `x`. Blank lines and lines starting with '#'
/// are skipped.
SampleSet read_samples(std::istream& in);
SampleSet read_sample_file(const std::filesystem::path& path);

/// One value per line, printed with enough digits to round-trip.
void write_samples(std::ostream& out, const SampleSet& xs);

std::string format_fixed(double value, int decimals);
std::string format_exact(double value);

nlohmann::json stats_to_json(const SufficientStats& s);
SufficientStats stats_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const ParetoParams& p);

nlohmann::json summary_to_json(const bayes::PosteriorSummary& row);
bayes::PosteriorSummary summary_from_json(const nlohmann::json& j);

/// Columns: estimator,conditioning,alpha,beta,distance (distance blank when
/// no reference was given).
void write_summary_csv(std::ostream& out, const std::vector<bayes::PosteriorSummary>& rows,
                       int decimals);
std::vector<bayes::PosteriorSummary> read_summary_csv(std::istream& in);

/// Columns: ray_index,t,alpha,beta,x,y.
void write_ball_csv(std::ostream& out, const std::vector<geometry::Polyline>& rays);

/// `start:stop:count` (linear) or `log:start:stop:count` (geometric).
struct GridSpec {
    double start;
    double stop;
    std::size_t count;
    bool logarithmic;

    std::vector<double> points() const;
};

GridSpec parse_grid(std::string_view spec);

std::vector<std::string> split(std::string_view line, char sep);

}  // namespace paretogeo::io
