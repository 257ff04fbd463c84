// toralclass: command-line front end for the toral library.
#include "toral/classifier.hpp"
#include "toral/conjugacy.hpp"
#include "toral/dynamics.hpp"
#include "toral/io.hpp"
#include "toral/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace toral;

namespace {

struct Overrides {
  int bound_k = 0;
  unsigned precision = 0;
  std::size_t sim_n = 0;
  // One option per subcommand that accepts the flag; only the parsed one counts.
  std::vector<CLI::Option*> bound_opts, precision_opts, sim_n_opts;

  void add_bound(CLI::App* app) {
    bound_opts.push_back(app->add_option("-K,--bound", bound_k, "witness search bound")->check(CLI::NonNegativeNumber));
  }
  void add_precision(CLI::App* app) {
    precision_opts.push_back(app->add_option("-p,--precision", precision, "decimal digits")->check(CLI::Range(10u, 100000u)));
  }
  void add_sim_n(CLI::App* app) {
    sim_n_opts.push_back(app->add_option("-N,--samples", sim_n, "leaf samples")
                             ->check(CLI::Range(std::size_t{1000}, std::size_t{1} << 40)));
  }

  static bool given(const std::vector<CLI::Option*>& opts) {
    return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
  }

  RunConfig resolve() const {
    RunConfig cfg;
    cfg.apply_environment([](const char* name) { return std::getenv(name); });
    if (given(bound_opts)) cfg.bound_k = bound_k;
    if (given(precision_opts)) cfg.precision = precision;
    if (given(sim_n_opts)) cfg.sim_n = sim_n;
    return cfg;
  }
};

void print_verdict_witness(const ConjugacyVerdict& v) {
  std::cout << "verdict: " << to_string(v.kind);
  if (v.kind == ConjugacyKind::undecided) std::cout << " (K=" << v.bound << ")";
  std::cout << "\nroute: " << v.route << '\n';
  if (v.witness) std::cout << "witness T (T A T^-1 = A2):\n" << format_matrix(*v.witness);
}

int run_generate(long p, long q, int box) {
  const IntPolynomial chi = lift_quadratic(Integer(p), Integer(q));
  const IntMatrix a = companion_of(chi);
  const InvariantFormResult form = solve_invariant_form(a, box);
  std::cout << "# label: companion of " << to_string(chi) << '\n';
  std::cout << "# lifted from " << to_string(IntPolynomial{Integer(q), Integer(p), Integer(1)}, "z") << '\n';
  if (form.form) {
    std::cout << "# J (A^T J A = J), pfaffian " << form.form->pfaffian << ":\n";
    std::istringstream rows(format_matrix(form.form->J));
    for (std::string line; std::getline(rows, line);) std::cout << "#   " << line << '\n';
  } else {
    std::cout << "# J: none found (" << to_string(form.outcome) << ")\n";
  }
  std::cout << format_matrix(a);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify integer unimodular 4x4 matrices as automorphisms of the 4-torus."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("toralclass ") + kToolVersion);

  std::string file, file2;
  bool as_json = false;
  int form_box = 3;
  Overrides ov;

  auto* classify_cmd = app.add_subcommand("classify", "full classification report");
  classify_cmd->add_option("matrix", file, "matrix file ('-' for stdin)")->required();
  classify_cmd->add_flag("--json", as_json, "emit the JSON report");
  classify_cmd->add_option("--form-box", form_box, "coefficient box for the form search")->check(CLI::Range(1, 10));
  ov.add_bound(classify_cmd);
  ov.add_precision(classify_cmd);

  auto* form = app.add_subcommand("form", "recover an invariant integer symplectic form");
  form->add_option("matrix", file)->required();
  form->add_option("--box", form_box, "coefficient box for the form search")->check(CLI::Range(1, 10));

  auto* entropy_cmd = app.add_subcommand("entropy", "topological entropy");
  entropy_cmd->add_option("matrix", file)->required();
  ov.add_precision(entropy_cmd);

  std::vector<std::string> coefficients;
  auto* factor = app.add_subcommand("factor", "factor the characteristic polynomial (or a given monic quartic)");
  factor->add_option("matrix", file);
  factor->add_option("-c,--coefficients", coefficients, "coefficients from the leading term down");

  auto* conj = app.add_subcommand("conjugacy", "decide integer-unimodular conjugacy of two matrices");
  conj->add_option("first", file)->required();
  conj->add_option("second", file2)->required();
  ov.add_bound(conj);

  auto* decompose = app.add_subcommand("decompose", "split a decomposable matrix into hyperbolic x periodic blocks");
  decompose->add_option("matrix", file)->required();
  ov.add_bound(decompose);

  std::vector<long> quadratic;
  auto* generate = app.add_subcommand("generate", "companion matrix of the lift of z^2 + p z + q");
  generate->add_option("--quadratic", quadratic, "p q")->required()->expected(2);
  generate->add_option("--box", form_box)->check(CLI::Range(1, 10));

  int mode_box = 3;
  double step = RunConfig{}.step;
  unsigned threads = 0;
  bool stable = false;
  auto* simulate = app.add_subcommand("simulate", "Weyl sums along the unstable leaf (CSV)");
  simulate->add_option("matrix", file)->required();
  simulate->add_option("-M,--mode-box", mode_box, "modes with 0 < |m|_inf <= M")->check(CLI::Range(1, 8));
  simulate->add_option("--step", step, "leaf sampling step");
  simulate->add_option("--threads", threads, "worker threads (0: all cores)");
  simulate->add_flag("--stable", stable, "sample the stable leaf instead");
  ov.add_sim_n(simulate);
  ov.add_precision(simulate);

  std::vector<long> mode;
  std::size_t max_iter = 10000;
  int orbit_box = 2;
  auto* dual = app.add_subcommand("dual-orbit", "finite orbits of the dual map m -> A^T m");
  dual->add_option("matrix", file)->required();
  dual->add_option("-m,--mode", mode, "single start vector m1 m2 m3 m4")->expected(4);
  dual->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  dual->add_option("--box", orbit_box, "scan all 0 < |m|_inf <= box")->check(CLI::Range(1, 5));

  if (argc > 1 && argv[1][0] != '-') {
    const std::string name = argv[1];
    bool known = false;
    for (const CLI::App* sub : app.get_subcommands({})) known = known || sub->get_name() == name;
    if (!known) {
      std::cerr << "unknown subcommand '" << name << "'\nRun with --help for more information.\n";
      return 1;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg = ov.resolve();
    cfg.form_box = form_box;
    cfg.mode_box = mode_box;
    cfg.step = step;

    if (*classify_cmd) {
      const MatrixDocument doc = read_matrix_file(file);
      const ClassificationReport r = classify(doc.matrix, cfg.classify_options());
      if (as_json) std::cout << report_json(r, doc, cfg).dump(2) << '\n';
      else std::cout << report_text(r, doc, cfg);
    } else if (*form) {
      const MatrixDocument doc = read_matrix_file(file);
      const InvariantFormResult f = solve_invariant_form(doc.matrix, form_box);
      std::cout << "solution dimension: " << f.solution_dimension << '\n';
      if (f.form) std::cout << "pfaffian: " << f.form->pfaffian << "\nJ:\n" << format_matrix(f.form->J);
      else std::cout << "symplectic: none found (" << to_string(f.outcome) << ", bound " << f.box << ")\n";
    } else if (*entropy_cmd) {
      const MatrixDocument doc = read_matrix_file(file);
      const EntropyValue h = entropy(doc.matrix, cfg.precision);
      std::cout << h.decimal() << "  +- " << h.bound() << '\n';
    } else if (*factor) {
      IntPolynomial p;
      if (!coefficients.empty()) {
        std::vector<Integer> asc;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
          const std::string& s = *it;
          if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos)
            throw ParseError("expected an integer coefficient, found '" + s + "'");
          asc.emplace_back(s[0] == '+' ? s.substr(1) : s);
        }
        p = IntPolynomial(std::move(asc));
      } else if (!file.empty()) {
        p = char_poly(read_matrix_file(file).matrix);
      } else {
        std::cerr << "factor: give a matrix file or --coefficients\n";
        return 1;
      }
      const Factorization f = factor_monic_quartic(p);
      std::cout << "polynomial: " << to_string(p) << "\nfactorization: " << f.to_string() << '\n';
      const auto orders = cyclotomic_orders(p);
      std::cout << "cyclotomic orders: {";
      for (std::size_t i = 0; i < orders.size(); ++i) std::cout << (i ? "," : "") << orders[i];
      std::cout << "}\n";
    } else if (*conj) {
      const MatrixDocument a = read_matrix_file(file);
      const MatrixDocument b = read_matrix_file(file2);
      print_verdict_witness(decide_conjugacy(a.matrix, b.matrix, cfg.bound_k));
    } else if (*decompose) {
      const MatrixDocument doc = read_matrix_file(file);
      const IntPolynomial chi = char_poly(doc.matrix);
      if (reciprocal_coefficients(chi) && spectral_classify(chi) == SpectralType::partially_hyperbolic &&
          factor_monic_quartic(chi).irreducible()) {
        std::cout << "verdict: transitive — no decomposition\n";
        return 0;
      }
      try {
        const Decomposition d = split_decomposable(doc.matrix, cfg.bound_k);
        std::cout << "verdict: decomposable\nk: " << d.k << "\nindex: " << d.index << '\n';
        std::cout << "H:\n" << format_matrix(d.H_block) << "R:\n" << format_matrix(d.R_block);
        if (d.S) std::cout << "S (S^-1 A S = blockdiag(H, R)):\n" << format_matrix(*d.S);
        else if (d.split_obstructed())
          std::cout << "S: none exists (sublattice index " << d.index << " is a conjugacy invariant; block forms have index 1)\n";
        else std::cout << "S: not found within bound " << d.bound << '\n';
      } catch (const NotDecomposable& e) {
        std::cout << "verdict: not decomposable\nreason: " << e.what() << '\n';
      }
    } else if (*generate) {
      return run_generate(quadratic[0], quadratic[1], form_box);
    } else if (*simulate) {
      const MatrixDocument doc = read_matrix_file(file);
      EquidistributionConfig sim = cfg.equidistribution();
      sim.threads = threads;
      const EigenData ed = eigen_data(doc.matrix, stable ? Branch::stable : Branch::unstable, cfg.precision);
      const ResonanceLattice rl = resonance_lattice(ed);
      std::cout << "m1,m2,m3,m4,N,S_N,resonant_predicted\n";
      for (const WeylReport& w : leaf_equidistribution(ed, rl, sim)) {
        std::cout << w.m(0) << ',' << w.m(1) << ',' << w.m(2) << ',' << w.m(3) << ',' << w.N << ','
                  << std::setprecision(12) << w.S_N << ',' << (w.resonant_predicted ? "true" : "false") << '\n';
      }
    } else if (*dual) {
      const MatrixDocument doc = read_matrix_file(file);
      std::vector<IntVector> starts;
      if (!mode.empty()) {
        IntVector m(4);
        for (int i = 0; i < 4; ++i) m(i) = mode[static_cast<std::size_t>(i)];
        starts.push_back(m);
      } else {
        const int side = 2 * orbit_box + 1;
        for (int idx = 0; idx < side * side * side * side; ++idx) {
          IntVector m(4);
          int rest = idx;
          for (int i = 3; i >= 0; --i) {
            m(i) = rest % side - orbit_box;
            rest /= side;
          }
          if (!m.isZero()) starts.push_back(m);
        }
      }
      std::cout << "m1,m2,m3,m4,status,period\n";
      std::size_t cycles = 0;
      for (const IntVector& m : starts) {
        const DualOrbitResult r = dual_orbit_test(doc.matrix, m, max_iter);
        if (r.periodic()) ++cycles;
        std::cout << m(0) << ',' << m(1) << ',' << m(2) << ',' << m(3) << ','
                  << (r.periodic() ? "periodic," + std::to_string(*r.period) : "no-cycle-within," + std::to_string(max_iter))
                  << '\n';
      }
      std::cerr << cycles << " of " << starts.size() << " start vectors have finite orbits\n";
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
