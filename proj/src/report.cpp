#include "toral/report.hpp"

#include <charconv>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>

namespace toral {

namespace {

template <typename T>
T parse_env_number(const char* name, const char* text) {
  const std::string s(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string(name) + ": not a valid number: '" + s + "'");
  return value;
}

std::string complex_string(const Complex& z, unsigned digits) {
  if (z.im == 0) return fixed_string(z.re, digits);
  const bool neg = z.im < 0;
  return fixed_string(z.re, digits) + (neg ? " - " : " + ") + fixed_string(neg ? Real(-z.im) : z.im, digits) + "i";
}

ordered_json lattice_json(const LatticeBasis& l) {
  ordered_json basis = ordered_json::array();
  for (Eigen::Index i = 0; i < l.rows.rows(); ++i) basis.push_back(json_vector(l.rows.row(i).transpose()));
  return basis;
}

ordered_json polynomial_json(const IntPolynomial& p) {
  ordered_json coeffs = ordered_json::array();
  for (int i = p.degree(); i >= 0; --i) coeffs.push_back(json_integer(p.coefficient(static_cast<std::size_t>(i))));
  return ordered_json{{"text", to_string(p)}, {"coefficients", coeffs}};
}

std::string form_status(const InvariantFormResult& f) {
  if (f.form) return "found";
  return "none found (" + to_string(f.outcome) + ", bound " + std::to_string(f.box) + ")";
}

}  // namespace

void RunConfig::apply_environment(const std::function<const char*(const char*)>& getenv) {
  if (const char* v = getenv("TORALCLASS_BOUND_K")) bound_k = parse_env_number<int>("TORALCLASS_BOUND_K", v);
  if (const char* v = getenv("TORALCLASS_PRECISION")) precision = parse_env_number<unsigned>("TORALCLASS_PRECISION", v);
  if (const char* v = getenv("TORALCLASS_SIM_N")) sim_n = parse_env_number<std::size_t>("TORALCLASS_SIM_N", v);
  if (bound_k < 0) throw std::invalid_argument("TORALCLASS_BOUND_K must be nonnegative");
  if (precision < 10) throw std::invalid_argument("TORALCLASS_PRECISION must be at least 10");
}

EquidistributionConfig RunConfig::equidistribution() const {
  EquidistributionConfig c;
  c.samples = sim_n;
  c.mode_box = mode_box;
  c.step = step;
  c.resonant_threshold = resonant_threshold;
  c.nonresonant_threshold = nonresonant_threshold;
  return c;
}

ordered_json json_integer(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return z.convert_to<std::int64_t>();
  return z.str();
}

ordered_json json_vector(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_integer(v(i)));
  return a;
}

ordered_json json_matrix(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(json_vector(m.row(i).transpose()));
  return rows;
}

std::string format_vector(const IntVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v(i).str();
  return s + ")";
}

ordered_json provenance_json(const RunConfig& cfg) {
  std::ostringstream step;
  step << std::setprecision(17) << cfg.step;
  return ordered_json{{"tool", "toralclass"},
                      {"version", kToolVersion},
                      {"bound_k", cfg.bound_k},
                      {"form_box", cfg.form_box},
                      {"precision_digits", cfg.precision},
                      {"simulation",
                       {{"N", cfg.sim_n},
                        {"mode_box", cfg.mode_box},
                        {"step", step.str()},
                        {"resonant_threshold", cfg.resonant_threshold},
                        {"nonresonant_threshold", cfg.nonresonant_threshold}}}};
}

ordered_json report_json(const ClassificationReport& r, const MatrixDocument& doc, const RunConfig& cfg) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;

  ordered_json input{{"matrix", json_matrix(r.input)}, {"det", json_integer(r.det)}};
  input["label"] = doc.label ? ordered_json(*doc.label) : ordered_json(nullptr);
  input["source"] = doc.source.empty() ? ordered_json(nullptr) : ordered_json(doc.source);
  j["input"] = std::move(input);

  ordered_json form{{"status", form_status(r.form)},
                    {"J", r.form.form ? json_matrix(r.form.form->J) : ordered_json(nullptr)},
                    {"pfaffian", r.form.form ? json_integer(r.form.form->pfaffian) : ordered_json(nullptr)},
                    {"solution_dimension", r.form.solution_dimension},
                    {"box", r.form.box}};
  j["symplectic_form"] = std::move(form);

  j["char_poly"] = polynomial_json(r.char_poly);
  ordered_json factors = ordered_json::array();
  for (const Factor& f : r.factorization.factors) {
    ordered_json fj = polynomial_json(f.poly);
    fj["multiplicity"] = f.multiplicity;
    factors.push_back(std::move(fj));
  }
  j["factorization"] = std::move(factors);
  j["spectral_type"] = r.spectral_type ? ordered_json(to_string(*r.spectral_type)) : ordered_json(nullptr);
  j["ergodic"] = r.ergodicity.ergodic;
  j["certificate"] = r.ergodicity.certificate();
  j["entropy"] = {{"value", r.entropy.decimal()}, {"precision", r.entropy.digits}, {"error_bound", r.entropy.bound()}};
  j["transitive"] = r.transitive ? ordered_json(*r.transitive) : ordered_json(nullptr);

  if (r.resonance_unstable) {
    ordered_json res{{"rank", r.resonance_unstable->rank()}, {"basis", lattice_json(r.resonance_unstable->lattice)}};
    res["lambda"] = complex_string(r.unstable->lambda, r.unstable->digits);
    res["minimal_polynomial"] = to_string(r.unstable->minimal_polynomial);
    res["alpha"] = r.unstable->alpha ? ordered_json(fixed_string(*r.unstable->alpha, r.unstable->digits)) : ordered_json(nullptr);
    res["stable"] = {{"rank", r.resonance_stable->rank()}, {"basis", lattice_json(r.resonance_stable->lattice)}};
    j["resonance"] = std::move(res);
  } else {
    j["resonance"] = nullptr;
  }

  if (r.decomposition) {
    const Decomposition& d = *r.decomposition;
    j["decomposition"] = {{"k", d.k},
                          {"H", json_matrix(d.H_block)},
                          {"R", json_matrix(d.R_block)},
                          {"S", d.S ? json_matrix(*d.S) : ordered_json(nullptr)},
                          {"index", json_integer(d.index)},
                          {"witness_bound", d.bound},
                          {"split_obstructed", d.split_obstructed()},
                          {"W_star", lattice_json(d.hyperbolic_lattice)},
                          {"W_c", lattice_json(d.center_lattice)}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["provenance"] = provenance_json(cfg);
  return j;
}

std::string report_text(const ClassificationReport& r, const MatrixDocument& doc, const RunConfig& cfg) {
  std::ostringstream os;
  auto field = [&os](const std::string& key, const std::string& value) {
    os << std::left << std::setw(20) << key << value << '\n';
  };
  if (doc.label) field("label", *doc.label);
  if (!doc.source.empty()) field("source", doc.source);
  os << "matrix\n" << format_matrix(r.input);
  field("det", r.det.str());
  field("symplectic form", form_status(r.form));
  if (r.form.form) {
    os << format_matrix(r.form.form->J);
    field("pfaffian", r.form.form->pfaffian.str());
  }
  field("char poly", to_string(r.char_poly));
  field("factorization", r.factorization.to_string());
  field("spectral type", r.spectral_type ? to_string(*r.spectral_type) : "unclassified (non-reciprocal)");
  field("ergodic", std::string(r.ergodicity.ergodic ? "yes" : "no") + " (" + r.ergodicity.certificate() + ")");
  field("entropy", r.entropy.decimal() + " (+- " + r.entropy.bound() + ")");
  if (r.transitive) field("transitive", *r.transitive ? "yes" : "no");
  if (r.unstable) {
    field("lambda", complex_string(r.unstable->lambda, r.unstable->digits));
    field("minimal poly", to_string(r.unstable->minimal_polynomial));
    if (r.unstable->alpha) field("alpha", fixed_string(*r.unstable->alpha, r.unstable->digits));
    std::string basis;
    for (Eigen::Index i = 0; i < r.resonance_unstable->lattice.rows.rows(); ++i)
      basis += (i ? " " : "") + format_vector(r.resonance_unstable->lattice.rows.row(i).transpose());
    field("resonance rank", std::to_string(r.resonance_unstable->rank()) + (basis.empty() ? "" : "  " + basis));
    field("stable rank", std::to_string(r.resonance_stable->rank()));
  }
  if (r.decomposition) {
    const Decomposition& d = *r.decomposition;
    field("decomposition", "k = " + std::to_string(d.k) + ", index " + d.index.str());
    os << "H\n" << format_matrix(d.H_block) << "R\n" << format_matrix(d.R_block);
    if (d.S) os << "S\n" << format_matrix(*d.S);
    else if (d.split_obstructed()) field("S", "none exists (index " + d.index.str() + " > 1 is a conjugacy invariant)");
    else field("S", "not found within bound " + std::to_string(d.bound));
  }
  field("bound K", std::to_string(cfg.bound_k));
  field("precision", std::to_string(cfg.precision) + " digits");
  return os.str();
}

}  // namespace toral
