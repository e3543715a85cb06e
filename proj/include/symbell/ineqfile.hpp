#ifndef SYMBELL_INEQFILE_HPP
#define SYMBELL_INEQFILE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symbell/fwsolver.hpp"
#include "symbell/numeric.hpp"
#include "symbell/scenario.hpp"

namespace symbell {

// Line-oriented key=value inequality file (.ineq). Doubles are written
// with 17 significant digits so a write/read round trip reproduces every
// field bit-exactly.

struct InequalityFile {
  int format_version = 1;
  int n_parties = 0;
  int n_inputs = 0;
  std::vector<std::string> coeffs;  // gcd-reduced integers, reduced coordinates
  std::string local_bound;          // decimal integer string
  double quantum_value = 0.0;
  std::string quantum_expr;
  double visibility = 0.0;
  std::string visibility_exact;  // exact fraction when expressible, else empty
  bool certified_exact = false;  // EXACT vs HEURISTIC
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string tool_version;

  static InequalityFile from_certificate(const FacetCertificate& cert, std::uint64_t seed,
                                         const std::string& config_hash);

  ReducedInt coefficients() const;
};

std::string write_inequality(const InequalityFile& file);
InequalityFile parse_inequality(const std::string& text);

std::string render_double(double value);  // %.17g

/// Content-addressed result cache under SYMBELL_CACHE_DIR (no caching when
/// the variable is unset). Writes are atomic (temp file + rename).
class RunCache {
 public:
  RunCache();  // reads SYMBELL_CACHE_DIR
  explicit RunCache(std::string directory);

  bool enabled() const { return !directory_.empty(); }

  /// Key for a run: command name, canonical parameter string, config hash.
  std::string key(const std::string& command, const std::string& params,
                  const std::string& config_hash) const;

  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& payload) const;

 private:
  std::string directory_;
};

}  // namespace symbell

#endif  // SYMBELL_INEQFILE_HPP
