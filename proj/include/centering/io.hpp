#ifndef CENTERING_IO_HPP
#define CENTERING_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "centering/bcap.hpp"
#include "centering/interval.hpp"
#include "centering/mixture.hpp"
#include "centering/opnorm.hpp"
#include "centering/prob_core.hpp"

namespace centering::io {

using Json = nlohmann::ordered_json;

/// Parses a file; SchemaError on I/O or syntax problems.
Json read_json_file(const std::string& path);

// Input shapes; malformed documents raise SchemaError, well-formed but
// invalid data (bad weights, overlapping blocks) DomainError.
FiniteProbSpace space_from_json(const Json& j);        // {"weights":[...]}
RandVar randvar_from_json(const Json& j);              // {"values":[x | [re,im], ...]}
Partition partition_from_json(const Json& j, std::size_t atoms);  // {"blocks":[[...]]}
Matrix matrix_from_json(const Json& j);                // {"rows":[[...]]}
DiscreteDistribution distribution_from_json(const Json& j);  // {"atoms":[[v,m],...]}
GridFunction grid_from_json(const Json& j);            // {"cells":N,"values":[...]}
/// {"functions":[grid, ...]} or a single grid object.
std::vector<GridFunction> functions_from_json(const Json& j);

/// x rounded to 12 significant digits (the printed precision).
double round12(double x);
/// Rounded number; null for NaN, "inf"/"-inf" strings for infinities.
Json num(double x);
/// Real number, or [re, im] when the imaginary part is nonzero.
Json num(Complex z);
Json exponent_json(Exponent p);

Json to_json(const OptReport& r);
Json to_json(const MixtureDecomposition& m);
Json to_json(const GridFunction& f);
Json to_json(const ApproximationCertificate& c);
Json to_json(const GammaExperiment& g);
Json to_json(const EigenCheck& e);

/// "%.12g" for CSV cells.
std::string fmt12(double x);

/// RFC 4180 writer: fields quoted when needed, CRLF line ends.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

}  // namespace centering::io

#endif  // CENTERING_IO_HPP
