// Command-line front end. Every subcommand prints a single JSON document
// (or CSV where documented) on stdout; exit codes: 0 ok, 1 invalid input,
// 2 inconclusive stabilization scan.

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cantor/dp.hpp"
#include "cantor/errors.hpp"
#include "cantor/fourier.hpp"
#include "cantor/hadamard.hpp"
#include "cantor/number_theory.hpp"
#include "cantor/orbit.hpp"
#include "cantor/spectrum.hpp"
#include "cantor/system.hpp"

using nlohmann::json;

namespace {

constexpr const char* kSchema = "cantor-spectra/1";

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::vector<cantor::Rational> parse_rational_list(const std::string& csv) {
  std::vector<cantor::Rational> out;
  for (const std::string& tok : split(csv, ','))
    if (!tok.empty()) out.push_back(cantor::Rational::parse(tok));
  if (out.empty()) throw cantor::InvalidInput("bad_arguments", "empty list: '" + csv + "'");
  return out;
}

std::vector<cantor::Int> parse_int_list(const std::string& csv) {
  std::vector<cantor::Int> out;
  for (const std::string& tok : split(csv, ','))
    if (!tok.empty()) out.push_back(cantor::parse_int(tok));
  if (out.empty()) throw cantor::InvalidInput("bad_arguments", "empty list: '" + csv + "'");
  return out;
}

std::vector<std::vector<unsigned>> parse_tuples(const std::string& text, std::size_t arity) {
  std::vector<std::vector<unsigned>> tuples;
  for (const std::string& part : split(text, ';')) {
    if (part.empty()) continue;
    std::vector<unsigned> tuple;
    for (const std::string& tok : split(part, ',')) {
      long v = std::stol(tok);
      if (v < 0) throw cantor::InvalidInput("bad_arguments", "tuple exponents must be >= 0");
      tuple.push_back(static_cast<unsigned>(v));
    }
    if (tuple.size() != arity)
      throw cantor::InvalidInput("bad_arguments", "tuple arity mismatch in '" + part + "'");
    tuples.push_back(std::move(tuple));
  }
  return tuples;
}

json rat_json(const cantor::Rational& r) { return r.str(); }
json int_json(const cantor::Int& z) { return z.get_str(); }

json rat_array(const std::vector<cantor::Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(rat_json(x));
  return a;
}

json int_array(const std::vector<cantor::Int>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(int_json(x));
  return a;
}

// Digit words print as concatenated tokens when every digit is a single
// character ("02"), comma-joined otherwise ("0,1/2").
std::string word_str(const std::vector<cantor::Rational>& word) {
  bool compact = true;
  for (const auto& d : word)
    if (d.str().size() != 1) compact = false;
  return cantor::join_rationals(word, compact ? "" : ",");
}

enum class Format { kJson, kCsv };

Format resolve_format(const std::string& flag) {
  std::string value = flag;
  if (value.empty()) {
    const char* env = std::getenv("CANTOR_SPECTRA_FORMAT");
    value = env ? env : "json";
  }
  if (value == "json") return Format::kJson;
  if (value == "csv") return Format::kCsv;
  throw cantor::InvalidInput("bad_arguments", "unknown format '" + value + "'");
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// Deterministic sampler independent of libstdc++ distribution internals.
class Sampler {
 public:
  explicit Sampler(unsigned long long seed) : rng_(seed) {}
  unsigned long long below(unsigned long long n) { return rng_() % n; }
  cantor::Rational rational(long max_den, const cantor::Rational& lo,
                            const cantor::Rational& hi) {
    long den = static_cast<long>(below(max_den)) + 1;
    cantor::Int n_lo = (lo * cantor::Rational(den)).ceil();
    cantor::Int n_hi = (hi * cantor::Rational(den)).floor();
    if (n_hi < n_lo) return lo;
    unsigned long span = cantor::Int(n_hi - n_lo + 1).get_ui();
    long offset = static_cast<long>(below(span));
    return cantor::Rational(n_lo + offset, cantor::Int(den));
  }

 private:
  std::mt19937_64 rng_;
};

struct TripleArgs {
  std::string n_text, b_text, l_text, json_text;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--N", n_text, "modulus N");
    cmd->add_option("--B", b_text, "digit set B, comma separated");
    cmd->add_option("--L", l_text, "frequency set L, comma separated");
    cmd->add_option("--json", json_text, "triple as JSON {\"N\":..,\"B\":[..],\"L\":[..]}");
  }

  cantor::HadamardTriple parse() const {
    if (!json_text.empty()) {
      json doc = json::parse(json_text, nullptr, false);
      if (doc.is_discarded() || !doc.contains("N") || !doc.contains("B") || !doc.contains("L"))
        throw cantor::InvalidInput("bad_arguments", "malformed triple JSON");
      auto to_int = [](const json& v) {
        return v.is_string() ? cantor::parse_int(v.get<std::string>())
                             : cantor::Int(v.get<long>());
      };
      std::vector<cantor::Int> b, l;
      for (const auto& v : doc["B"]) b.push_back(to_int(v));
      for (const auto& v : doc["L"]) l.push_back(to_int(v));
      return cantor::make_triple(to_int(doc["N"]), std::move(b), std::move(l));
    }
    if (n_text.empty() || b_text.empty() || l_text.empty())
      throw cantor::InvalidInput("bad_arguments", "provide --N/--B/--L or --json");
    return cantor::make_triple(cantor::parse_int(n_text), parse_int_list(b_text),
                               parse_int_list(l_text));
  }
};

json system_json(const cantor::CantorSystem& sys) {
  return {{"q", sys.base},
          {"digits", rat_array(sys.digits)},
          {"scale", int_json(sys.scale)},
          {"hull", {rat_json(sys.hull_lo), rat_json(sys.hull_hi)}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact membership, intersections and spectra for self-similar Cantor systems"};
  app.require_subcommand(1);

  std::string format_flag;
  unsigned long long seed = 0;
  app.add_option("--format", format_flag, "output format: json|csv (env CANTOR_SPECTRA_FORMAT)");
  app.add_option("--seed", seed, "seed for sampled experiments");

  // --- member / coding ---------------------------------------------------
  long q = 0;
  std::string digits_text, x_text;
  auto add_system_opts = [&](CLI::App* cmd) {
    cmd->add_option("--q", q, "integer base q >= 3")->required();
    cmd->add_option("--digits", digits_text, "digit set, comma separated rationals")->required();
  };
  CLI::App* member = app.add_subcommand("member", "decide x in K(q, A)");
  add_system_opts(member);
  member->add_option("--x", x_text, "rational query point")->required();
  CLI::App* coding = app.add_subcommand("coding", "membership plus orbit detail");
  add_system_opts(coding);
  coding->add_option("--x", x_text, "rational query point")->required();

  // --- intersect -----------------------------------------------------------
  long p = 2;
  int max_level = 20, window = 6;
  CLI::App* intersect = app.add_subcommand("intersect", "enumerate D_p n K(q, A) by levels");
  add_system_opts(intersect);
  intersect->add_option("--p", p, "expansion base of D_p")->required();
  intersect->add_option("--max-level", max_level, "deepest level to scan");
  intersect->add_option("--window", window, "empty levels needed to call it stable");

  // --- dimbound ------------------------------------------------------------
  int max_m = 1;
  CLI::App* dimbound = app.add_subcommand("dimbound", "digit-expansion dimension upper bound");
  add_system_opts(dimbound);
  dimbound->add_option("--max-m", max_m, "largest sumset depth m")->required();

  // --- uniformbound ----------------------------------------------------------
  int ub_level = 10, diff_max_level = 16, diff_window = 6, samples = 0;
  long alpha_max_den = 1000;
  std::string alphas_text;
  CLI::App* uniformbound =
      app.add_subcommand("uniformbound", "counts of (D_p + alpha) n K(q, A) with certified bound");
  add_system_opts(uniformbound);
  uniformbound->add_option("--p", p, "expansion base of D_p")->required();
  uniformbound->add_option("--level", ub_level, "D_p truncation level");
  uniformbound->add_option("--alphas", alphas_text, "explicit alphas, comma separated");
  uniformbound->add_option("--samples", samples, "number of sampled alphas (uses --seed)");
  uniformbound->add_option("--alpha-max-den", alpha_max_den, "denominator cap for samples");
  uniformbound->add_option("--diff-max-level", diff_max_level, "difference-set scan depth");
  uniformbound->add_option("--diff-window", diff_window, "difference-set stabilization window");

  // --- order / bloshchitsyn -------------------------------------------------
  std::string a_text, m_text, primes_text, qq_text;
  CLI::App* order = app.add_subcommand("order", "multiplicative order of a mod m");
  order->add_option("--a", a_text)->required();
  order->add_option("--m", m_text)->required();
  CLI::App* blosh = app.add_subcommand("bloshchitsyn", "order lifting parameters and c2");
  blosh->add_option("--p", primes_text, "primes, comma separated")->required();
  blosh->add_option("--q", qq_text, "base")->required();

  // --- hadamard ---------------------------------------------------------------
  TripleArgs triple_args;
  CLI::App* hadamard = app.add_subcommand("hadamard", "exact Hadamard triple check");
  triple_args.add_to(hadamard);

  // --- spectrum / eigenspectrum ------------------------------------------------
  int depth = 3, max_n0_scan = 8, n0_window = 3;
  std::string primes_csv = "3", tuples_text;
  CLI::App* spectrum = app.add_subcommand("spectrum", "spectrum ladder of mu_{N,B}");
  triple_args.add_to(spectrum);
  spectrum->add_option("--depth", depth, "ladder depth");
  CLI::App* eigen = app.add_subcommand("eigenspectrum", "scaled eigen-spectrum ladder");
  triple_args.add_to(eigen);
  eigen->add_option("--depth", depth, "ladder depth");
  eigen->add_option("--primes", primes_csv, "scaling factors, comma separated");
  eigen->add_option("--max-n0-scan", max_n0_scan, "stabilization scan budget");
  eigen->add_option("--window", n0_window, "stabilization window");
  eigen->add_option("--tuples", tuples_text, "exponent tuples, e.g. '0;1;2'");

  // --- verify --------------------------------------------------------------------
  int ladder_depth = 8, product_depth = 30, grid_points = 101;
  double grid_lo = 0.0, grid_hi = 1.0;
  long verify_scale = 1;
  std::string spectrum_text;
  CLI::App* verify = app.add_subcommand("verify", "exact orthogonality + Parseval criterion");
  triple_args.add_to(verify);
  verify->add_option("--ladder-depth", ladder_depth, "spectrum cut depth");
  verify->add_option("--scale", verify_scale, "integer scaling of the spectrum cut");
  verify->add_option("--product-depth", product_depth, "mu_hat truncation depth");
  verify->add_option("--grid", grid_points, "number of xi grid points");
  verify->add_option("--grid-lo", grid_lo, "grid start");
  verify->add_option("--grid-hi", grid_hi, "grid end");
  verify->add_option("--spectrum", spectrum_text, "explicit integer spectrum cut");

  for (CLI::App* sub : {member, coding, intersect, dimbound, uniformbound, order, blosh,
                        hadamard, spectrum, eigen, verify})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    Format format = resolve_format(format_flag);
    json doc;
    doc["schema"] = kSchema;

    if (member->parsed() || coding->parsed()) {
      cantor::CantorSystem sys = cantor::make_system(q, parse_rational_list(digits_text));
      cantor::Rational x = cantor::Rational::parse(x_text);
      cantor::MembershipCertificate cert = cantor::is_member(sys, x);
      doc["q"] = sys.base;
      doc["digits"] = rat_array(sys.digits);
      doc["x"] = rat_json(x);
      doc["member"] = cert.member;
      doc["preperiod"] = word_str(cert.preperiod);
      doc["period"] = word_str(cert.period);
      doc["states_visited"] = cert.states_visited;
      doc["state_bound"] = int_json(cert.state_bound);
      if (coding->parsed()) {
        if (cert.member)
          doc["reconstructed"] =
              rat_json(cantor::evaluate_coding(sys, cert.preperiod, cert.period));
        cantor::OrbitGraph g = cantor::build_orbit_graph(sys, x);
        doc["orbit_states"] = rat_array(g.states);
      }
      emit(doc);
    } else if (intersect->parsed()) {
      cantor::CantorSystem sys = cantor::make_system(q, parse_rational_list(digits_text));
      cantor::IntersectionReport rep = cantor::intersect_dp(sys, p, max_level, window);
      cantor::Int g;
      mpz_gcd(g.get_mpz_t(), cantor::Int(p).get_mpz_t(), cantor::Int(q).get_mpz_t());
      if (format == Format::kCsv) {
        std::cout << "x,level\n";
        for (const auto& [x, lvl] : rep.points) std::cout << x.str() << "," << lvl << "\n";
      } else {
        doc["system"] = system_json(sys);
        doc["p"] = p;
        if (g != 1) doc["warning"] = "p is not coprime to q";
        doc["prime_base"] = int_array(rep.prime_base);
        doc["max_level"] = rep.max_level;
        doc["window"] = rep.window;
        json pts = json::array();
        for (const auto& [x, lvl] : rep.points) pts.push_back({{"x", x.str()}, {"level", lvl}});
        doc["points"] = pts;
        doc["count"] = rep.points.size();
        doc["stabilized"] = rep.stabilized;
        doc["empty_levels_trailing"] = rep.empty_levels_trailing;
        doc["new_points_per_level"] = rep.new_points_per_level;
        emit(doc);
      }
    } else if (dimbound->parsed()) {
      cantor::CantorSystem sys = cantor::make_system(q, parse_rational_list(digits_text));
      cantor::DimensionBound b = cantor::dimension_upper_bound(sys, max_m);
      doc["system"] = system_json(sys);
      doc["max_m"] = max_m;
      doc["bound"] = b.bound;
      doc["best_m"] = b.best_m;
      doc["cardinalities"] = b.cardinalities;
      doc["certifies_dim_lt_1"] = b.bound < 1.0;
      emit(doc);
    } else if (uniformbound->parsed()) {
      cantor::CantorSystem sys = cantor::make_system(q, parse_rational_list(digits_text));
      std::vector<cantor::Rational> alphas;
      if (!alphas_text.empty()) alphas = parse_rational_list(alphas_text);
      if (samples > 0) {
        Sampler sampler(seed);
        cantor::Rational slack = sys.diameter();
        for (int i = 0; i < samples; ++i)
          alphas.push_back(
              sampler.rational(alpha_max_den, sys.hull_lo - slack, sys.hull_hi + slack));
      }
      if (alphas.empty())
        throw cantor::InvalidInput("bad_arguments", "need --alphas or --samples");
      cantor::UniformBoundReport rep =
          cantor::uniform_bound_experiment(sys, p, alphas, ub_level, diff_max_level, diff_window);
      if (format == Format::kCsv) {
        std::cout << "alpha,count\n";
        for (const auto& [alpha, count] : rep.counts)
          std::cout << alpha.str() << "," << count << "\n";
      } else {
        doc["system"] = system_json(sys);
        doc["p"] = p;
        doc["level"] = ub_level;
        doc["seed"] = seed;
        json counts = json::array();
        for (std::size_t i = 0; i < rep.counts.size(); ++i)
          counts.push_back({{"alpha", rep.counts[i].first.str()},
                            {"count", rep.counts[i].second},
                            {"points", rat_array(rep.points_per_alpha[i])}});
        doc["alphas"] = counts;
        doc["bound_status"] = rep.bound_status;
        doc["certified_bound"] =
            rep.certified_bound ? json(int_json(*rep.certified_bound)) : json(nullptr);
        if (rep.certified_bound) doc["max_denominator"] = int_json(rep.max_denominator);
        if (rep.diff_report) {
          json diff;
          diff["stabilized"] = rep.diff_report->stabilized;
          diff["count"] = rep.diff_report->points.size();
          json pts = json::array();
          for (const auto& [x, lvl] : rep.diff_report->points)
            pts.push_back({{"x", x.str()}, {"level", lvl}});
          diff["points"] = pts;
          doc["difference_set"] = diff;
        }
        emit(doc);
      }
    } else if (order->parsed()) {
      cantor::Int a = cantor::parse_int(a_text), m = cantor::parse_int(m_text);
      doc["a"] = int_json(a);
      doc["m"] = int_json(m);
      doc["order"] = int_json(cantor::multiplicative_order(a, m));
      emit(doc);
    } else if (blosh->parsed()) {
      std::vector<cantor::Int> primes = parse_int_list(primes_text);
      cantor::Int base = cantor::parse_int(qq_text);
      doc["q"] = int_json(base);
      json params = json::array();
      for (const cantor::Int& prime : primes) {
        cantor::BloshchitsynParams bp = cantor::bloshchitsyn_params(prime, base);
        params.push_back({{"p", int_json(bp.prime)}, {"m", bp.m}, {"d", int_json(bp.d)}});
      }
      doc["params"] = params;
      doc["c2"] = cantor::order_lower_bound_constant(primes, base).str();
      emit(doc);
    } else if (hadamard->parsed()) {
      cantor::HadamardTriple t = triple_args.parse();
      cantor::HadamardCheck check = cantor::check_hadamard(t);
      doc["N"] = int_json(t.modulus);
      doc["B"] = int_array(t.b_digits);
      doc["L"] = int_array(t.l_freqs);
      doc["valid"] = check.valid;
      if (check.witness)
        doc["witness"] = {int_json(check.witness->first), int_json(check.witness->second)};
      emit(doc);
    } else if (spectrum->parsed()) {
      cantor::HadamardTriple t = cantor::normalize_triple(triple_args.parse());
      cantor::SpectrumLadder ladder = cantor::spectrum_ladder(t, depth);
      doc["N"] = int_json(t.modulus);
      doc["B"] = int_array(t.b_digits);
      doc["L"] = int_array(t.l_freqs);
      doc["d"] = int_json(ladder.d);
      doc["lambda0"] = rat_array(ladder.lambda0);
      json cycles = json::array();
      for (const cantor::MBCycle& c : cantor::mb_cycles(t)) {
        json cyc = json::array();
        for (std::size_t i = 0; i < c.points.size(); ++i)
          cyc.push_back({{"point", c.points[i].str()}, {"label", int_json(c.labels[i])}});
        cycles.push_back(cyc);
      }
      doc["mb_cycles"] = cycles;
      json levels = json::array();
      for (const auto& level : ladder.levels) levels.push_back(rat_array(level));
      doc["levels"] = levels;
      emit(doc);
    } else if (eigen->parsed()) {
      cantor::HadamardTriple t = triple_args.parse();
      std::vector<cantor::Int> factors = parse_int_list(primes_csv);
      std::vector<std::vector<unsigned>> tuples = parse_tuples(tuples_text, factors.size());
      if (tuples.empty()) {
        tuples.push_back(std::vector<unsigned>(factors.size(), 0));
        for (std::size_t i = 0; i < factors.size(); ++i) {
          std::vector<unsigned> unit(factors.size(), 0);
          unit[i] = 1;
          tuples.push_back(unit);
        }
      }
      cantor::EigenSpectrumReport rep =
          cantor::eigen_spectrum(t, factors, depth, max_n0_scan, n0_window, tuples);
      doc["N"] = int_json(rep.base.modulus);
      doc["B"] = int_array(rep.base.b_digits);
      doc["L"] = int_array(rep.base.l_freqs);
      doc["factors"] = int_array(rep.factors);
      doc["n0"] = rep.n0;
      doc["n0_status"] = "observed";
      doc["window"] = rep.window;
      doc["ladder_digits"] = int_array(rep.ladder.triple.l_freqs);
      json levels = json::array();
      for (const auto& level : rep.ladder.levels) levels.push_back(rat_array(level));
      doc["levels"] = levels;
      json identity = json::array();
      for (std::size_t i = 0; i < rep.tuples.size(); ++i)
        identity.push_back(
            {{"tuple", rep.tuples[i]}, {"holds", static_cast<bool>(rep.identity_holds[i])}});
      doc["identity"] = identity;
      emit(doc);
    } else if (verify->parsed()) {
      cantor::HadamardTriple t = cantor::normalize_triple(triple_args.parse());
      std::vector<cantor::Int> cut;
      if (!spectrum_text.empty()) {
        cut = parse_int_list(spectrum_text);
      } else {
        cantor::SpectrumLadder ladder = cantor::spectrum_ladder(t, ladder_depth);
        for (const cantor::Rational& x : ladder.levels.back()) {
          if (!x.is_integer())
            throw cantor::InvalidInput("non_integer_spectrum",
                                       "ladder entries must be integers for verification");
          cut.push_back(x.num() * verify_scale);
        }
      }
      cantor::GramResult gram = cantor::gram_offdiag_exact(cut, t.modulus, t.b_digits);
      cantor::ParsevalReport rep = cantor::parseval_check(
          t.modulus, t.b_digits, cut, cantor::uniform_grid(grid_lo, grid_hi, grid_points),
          product_depth);
      if (format == Format::kCsv) {
        std::cout << "xi,Q\n";
        for (std::size_t i = 0; i < rep.xi_grid.size(); ++i)
          std::cout << rep.xi_grid[i] << "," << rep.q_values[i] << "\n";
      } else {
        doc["N"] = int_json(t.modulus);
        doc["B"] = int_array(t.b_digits);
        doc["L"] = int_array(t.l_freqs);
        doc["spectrum_size"] = rep.spectrum_size;
        doc["scale"] = verify_scale;
        doc["gram_orthogonal"] = gram.orthogonal;
        if (gram.witness)
          doc["gram_witness"] = {int_json(gram.witness->first), int_json(gram.witness->second)};
        doc["product_depth"] = rep.product_depth;
        doc["eps_trunc"] = rep.eps_trunc;
        doc["max_deviation"] = rep.max_deviation;
        doc["q_values"] = rep.q_values;
        emit(doc);
      }
    }
    return 0;
  } catch (const cantor::Inconclusive& e) {
    json err;
    err["schema"] = kSchema;
    err["error"] = {{"code", e.code()}, {"message", e.what()}};
    emit(err);
    return 2;
  } catch (const cantor::Error& e) {
    json err;
    err["schema"] = kSchema;
    err["error"] = {{"code", e.code()}, {"message", e.what()}};
    emit(err);
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["schema"] = kSchema;
    err["error"] = {{"code", "internal"}, {"message", e.what()}};
    emit(err);
    return 1;
  }
}
