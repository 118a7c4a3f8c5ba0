#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tailbound/bounds.hpp"
#include "tailbound/error.hpp"
#include "tailbound/format.hpp"
#include "tailbound/numerics.hpp"

namespace tailbound::cli {

/// Malformed command line or configuration; maps to exit status 2.
class UsageError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// `v`, `v1,v2,...` or an inclusive range `start:stop:step`.
std::vector<double> parse_nu(std::string_view spec);

struct CompareMarkov {};
/// moment:k=1,2,3 -- a k-sweep, one column pair per order.
struct CompareMoments {
  std::vector<MomentOrder> orders;
};
struct SingleBound {
  BoundKind kind;
};
struct OptimizeChernoff {
  ChernoffVariant variant;
};

using Method = std::variant<CompareMarkov, CompareMoments, SingleBound, OptimizeChernoff>;

/// compare | markov | enhanced-markov | moment:k=K | enhanced-moment:k=K |
/// chernoff:t=T | enhanced-chernoff:t=T | chernoff:opt | enhanced-chernoff:opt,
/// plus the k-sweep moment:k=K1,K2,... Throws UsageError.
///
/// `table` reads any single bound as its family's comparison (markov and
/// enhanced-markov both give the Markov columns); `bound` prints exactly
/// the bound named.
Method parse_method(std::string_view spec);

enum class OutputFormat { csv, table };

struct RunConfig {
  std::vector<std::string> dists;
  std::optional<std::string> nu;
  std::string method = "compare";
  OutputFormat format = OutputFormat::csv;
  NumberFormat numbers;
  bool clamp = false;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::optional<std::string> sample_file;
  QuadratureConfig quadrature;
};

std::string cmd_table(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config);
std::string cmd_bound(const RunConfig& config);

struct VerifyOutput {
  std::string text;
  bool passed;
};
VerifyOutput cmd_verify(const RunConfig& config);

/// Full command-line entry point; args excludes the program name.
/// Returns 0 on success, 1 on numerical failure or a failed verification,
/// 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailbound::cli
