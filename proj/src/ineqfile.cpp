#include "symbell/ineqfile.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symbell/version.hpp"

namespace symbell {

std::string render_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

InequalityFile InequalityFile::from_certificate(const FacetCertificate& cert, std::uint64_t seed,
                                                const std::string& config_hash) {
  InequalityFile file;
  file.n_parties = cert.params.n_parties;
  file.n_inputs = cert.params.n_inputs;
  for (const auto& c : cert.coeffs.e) file.coeffs.push_back(c.str());
  file.local_bound = cert.local_bound.str();
  file.quantum_value = cert.quantum_value;
  file.quantum_expr = cert.quantum_expr;
  file.visibility = cert.visibility;
  if (cert.visibility_exact) {
    const BigRat& v = *cert.visibility_exact;
    file.visibility_exact = numerator(v).str() + "/" + denominator(v).str();
  }
  file.certified_exact = cert.certified_exact;
  file.seed = seed;
  file.config_hash = config_hash;
  file.tool_version = kVersion;
  return file;
}

ReducedInt InequalityFile::coefficients() const {
  ScenarioParams params(n_parties, n_inputs);
  std::vector<BigInt> e;
  e.reserve(coeffs.size());
  for (const auto& c : coeffs) e.emplace_back(c);
  return ReducedInt(params, std::move(e));
}

std::string write_inequality(const InequalityFile& file) {
  std::ostringstream out;
  out << "# symbell inequality file\n";
  out << "format=" << file.format_version << "\n";
  out << "N=" << file.n_parties << "\n";
  out << "m=" << file.n_inputs << "\n";
  out << "coeffs=";
  for (std::size_t i = 0; i < file.coeffs.size(); ++i) out << (i ? " " : "") << file.coeffs[i];
  out << "\n";
  out << "L=" << file.local_bound << "\n";
  out << "Q=" << render_double(file.quantum_value) << "\n";
  out << "Q_expr=" << file.quantum_expr << "\n";
  out << "v=" << render_double(file.visibility) << "\n";
  out << "v_exact=" << file.visibility_exact << "\n";
  out << "certified=" << (file.certified_exact ? "EXACT" : "HEURISTIC") << "\n";
  out << "seed=" << file.seed << "\n";
  out << "config=" << file.config_hash << "\n";
  out << "version=" << file.tool_version << "\n";
  return out.str();
}

InequalityFile parse_inequality(const std::string& text) {
  InequalityFile file;
  std::istringstream in(text);
  std::string line;
  bool saw_format = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parse_inequality: expected key=value, got: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "format") {
      file.format_version = std::stoi(value);
      saw_format = true;
    } else if (key == "N") {
      file.n_parties = std::stoi(value);
    } else if (key == "m") {
      file.n_inputs = std::stoi(value);
    } else if (key == "coeffs") {
      std::istringstream cs(value);
      std::string token;
      while (cs >> token) file.coeffs.push_back(token);
    } else if (key == "L") {
      file.local_bound = value;
    } else if (key == "Q") {
      file.quantum_value = std::strtod(value.c_str(), nullptr);
    } else if (key == "Q_expr") {
      file.quantum_expr = value;
    } else if (key == "v") {
      file.visibility = std::strtod(value.c_str(), nullptr);
    } else if (key == "v_exact") {
      file.visibility_exact = value;
    } else if (key == "certified") {
      if (value != "EXACT" && value != "HEURISTIC")
        throw std::invalid_argument("parse_inequality: bad certified value: " + value);
      file.certified_exact = value == "EXACT";
    } else if (key == "seed") {
      file.seed = std::strtoull(value.c_str(), nullptr, 10);
    } else if (key == "config") {
      file.config_hash = value;
    } else if (key == "version") {
      file.tool_version = value;
    } else {
      throw std::invalid_argument("parse_inequality: unknown key: " + key);
    }
  }
  if (!saw_format) throw std::invalid_argument("parse_inequality: missing format line");
  return file;
}

RunCache::RunCache() {
  if (const char* dir = std::getenv("SYMBELL_CACHE_DIR")) directory_ = dir;
}

RunCache::RunCache(std::string directory) : directory_(std::move(directory)) {}

std::string RunCache::key(const std::string& command, const std::string& params,
                          const std::string& config_hash) const {
  return hex64(fnv1a64(command + "\x1f" + params + "\x1f" + config_hash));
}

std::optional<std::string> RunCache::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(std::filesystem::path(directory_) / (key + ".out"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void RunCache::store(const std::string& key, const std::string& payload) const {
  if (!enabled()) return;
  namespace fs = std::filesystem;
  const fs::path dir(directory_);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path final_path = dir / (key + ".out");
  const fs::path tmp_path = dir / (key + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    out << payload;
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) fs::remove(tmp_path, ec);
}

}  // namespace symbell
