// Command line front end: runs the carve pipeline and the symplectic check
// suite, emitting deterministic JSON certificates and sparse matrix dumps.
//
// Exit codes: 0 = certified pass, 1 = a certificate or oracle check failed,
// 2 = precondition violation (the message names the violated hypothesis).

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weylcarve/carve.hpp"
#include "weylcarve/endoalg.hpp"
#include "weylcarve/errors.hpp"
#include "weylcarve/repspace.hpp"
#include "weylcarve/weights.hpp"

namespace {

using njson = nlohmann::ordered_json;
using weylcarve::Error;
using weylcarve::errc;
using weylcarve::exactnum::Int;
using weylcarve::weights::GroupCase;
using weylcarve::weights::Weight;

int code_of(const Error& e) { return e.code() == errc::oracle_mismatch ? 1 : 2; }

njson valuation_json(const weylcarve::exactnum::Valuation& v) {
  if (!v) return nullptr;
  return *v;
}

uint64_t resolve_cap(bool flag_given, unsigned long long flag_value) {
  if (flag_given) {
    if (flag_value == 0) throw Error(errc::invalid_argument, "--cap must be positive");
    return flag_value;
  }
  if (const char* env = std::getenv("WEYL_CARVE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw Error(errc::invalid_argument, "WEYL_CARVE_CAP must be a positive integer");
    return v;
  }
  return weylcarve::repspace::kDefaultCap;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw Error(errc::invalid_argument, "cannot open output file " + out_path);
  os << text;
  if (!os.good()) throw Error(errc::invalid_argument, "write failed for " + out_path);
}

njson report_json(const weylcarve::carve::CarveReport& rep) {
  njson j;
  j["weight"] = rep.weight.to_string();
  j["dual_weight"] = rep.dual.to_string();
  j["s"] = rep.s;
  j["p"] = rep.p ? njson(rep.p->get_si()) : njson(nullptr);
  j["disc"] = rep.disc;
  j["flags"] = {{"p_gt_2g", rep.p_gt_2g},
                {"s_lt_p", rep.s_lt_p},
                {"p_small", rep.p_small},
                {"p_small_dual", rep.p_small_dual},
                {"p_small_boundary", rep.p_small_boundary}};
  // z records the two embeddings' defining data: coordinates of the chosen
  // quadratic integer, or the chosen integer pair in the rational model.
  const auto& sep = rep.separator;
  njson z = njson::array();
  if (rep.disc > 0) {
    z.push_back(sep.a.x().get_str());
    z.push_back(sep.a.y().get_str());
  } else {
    z.push_back(sep.a.x().get_str());
    z.push_back(sep.b.x().get_str());
  }
  j["chosen"] = {{"m", rep.m},
                 {"z", z},
                 {"bezout",
                  {{"U", sep.bez.u.to_string()},
                   {"V", sep.bez.v.to_string()},
                   {"c", sep.bez.c.get_str()}}}};
  j["dims"] = {{"image", rep.dim_image}, {"expected", rep.expected_dim.get_si()}};
  njson hw = njson::array();
  for (const auto& chi : rep.highest_weights) hw.push_back(chi.to_string());
  j["highest_weights"] = hw;
  j["min_p_valuation"] = valuation_json(rep.min_p_valuation);
  j["galois_fixed_dim"] = rep.galois_fixed_dim;
  j["t"] = rep.t;
  j["pass"] = rep.pass;
  return j;
}

njson siegel_json(const weylcarve::carve::SiegelReport& rep) {
  njson j;
  j["g"] = rep.g;
  j["s"] = rep.s;
  j["p"] = rep.p.get_si();
  j["dim"] = rep.dim;
  njson checks;
  for (const auto& c : rep.checks) checks[c.name] = c.ok;
  j["checks"] = checks;
  j["theta_min_valuation"] = valuation_json(rep.theta_min_valuation);
  njson scalars = njson::array();
  for (const auto& q : rep.commutator_scalars) scalars.push_back(q.to_string());
  j["commutator_scalars"] = scalars;
  j["pass"] = rep.pass;
  return j;
}

struct UnitaryArgs {
  std::vector<std::string> weights;
  int g = 0;
  bool g_given = false;
  long p = 0;
  bool p_given = false;
  long disc = 1;
  std::string mode = "integral";
  std::string out;
  unsigned long long cap = 0;
  bool cap_given = false;
  int jobs = 1;
};

int run_unitary(const UnitaryArgs& args) {
  const uint64_t cap = resolve_cap(args.cap_given, args.cap);
  if (args.mode != "integral" && args.mode != "rational")
    throw Error(errc::invalid_argument, "--mode must be integral or rational");
  std::optional<Int> p;
  if (args.mode == "integral") {
    if (!args.p_given)
      throw Error(errc::invalid_argument, "integral mode requires --p (use --mode rational to omit it)");
    p = Int(args.p);
  } else if (args.p_given) {
    throw Error(errc::invalid_argument, "rational mode does not take --p");
  }

  struct Item {
    njson j;
    int code = 2;
  };
  std::vector<Item> items(args.weights.size());
  const auto work = [&](size_t i) {
    try {
      const Weight a = weylcarve::weights::parse_weight(args.weights[i], GroupCase::Unitary);
      if (args.g_given && a.rank() != args.g)
        throw Error(errc::invalid_argument, "--g disagrees with the weight rank");
      const auto rep = weylcarve::carve::carve_unitary(a, p, args.disc, cap);
      items[i] = {report_json(rep), rep.pass ? 0 : 1};
    } catch (const Error& e) {
      items[i] = {njson{{"weight", args.weights[i]}, {"error", e.what()}}, code_of(e)};
    } catch (const std::exception& e) {
      items[i] = {njson{{"weight", args.weights[i]}, {"error", e.what()}}, 2};
    }
  };

  const size_t n = items.size();
  const int jobs = std::max(1, std::min<int>(args.jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
      });
    for (auto& t : pool) t.join();
  }

  int code = 0;
  for (const auto& it : items) code = std::max(code, it.code);
  if (n == 1 && items[0].code == 2 && items[0].j.contains("error")) {
    // a lone precondition failure carries no certificate to print
    std::cerr << "carve: error: " << items[0].j["error"].get<std::string>() << "\n";
    return 2;
  }
  njson out;
  if (n == 1) {
    out = items[0].j;
  } else {
    out = njson::array();
    for (auto& it : items) out.push_back(std::move(it.j));
  }
  emit(out.dump(2) + "\n", args.out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic projector pipeline on exterior modules"};
  app.require_subcommand(1);

  UnitaryArgs ua;
  CLI::App* unitary = app.add_subcommand(
      "unitary", "carve a dominant weight's representation pair and certify it");
  unitary->add_option("--weight", ua.weights, "weight as \"a1,...,ag;c\" (repeatable)")
      ->required();
  auto* ua_g = unitary->add_option("--g", ua.g, "rank (checked against the weight)");
  auto* ua_p = unitary->add_option("--p", ua.p, "odd unramified prime for the integral certificate");
  unitary->add_option("--disc", ua.disc, "squarefree positive discriminant, 0 = rational model");
  unitary->add_option("--mode", ua.mode, "integral (default) or rational");
  unitary->add_option("--out", ua.out, "output path for the JSON report (default stdout)");
  auto* ua_cap = unitary->add_option("--cap", ua.cap, "basis size cap (overrides WEYL_CARVE_CAP)");
  unitary->add_option("--jobs", ua.jobs, "parallel workers for batched weights");

  struct {
    int g = 0, s = 0;
    long p = 0;
    std::string out;
    unsigned long long cap = 0;
  } sa;
  CLI::App* siegel = app.add_subcommand("siegel-check", "exact symplectic operator identity suite");
  siegel->add_option("--g", sa.g, "genus")->required();
  siegel->add_option("--s", sa.s, "number of labelled copies (>= 2)")->required();
  siegel->add_option("--p", sa.p, "odd prime > 2g")->required();
  siegel->add_option("--out", sa.out, "output path for the JSON report (default stdout)");
  auto* sa_cap = siegel->add_option("--cap", sa.cap, "basis size cap (overrides WEYL_CARVE_CAP)");

  struct {
    int g = 0, s = 0;
    long p = 0, disc = 1;
    std::string weight, out;
    unsigned long long cap = 0;
  } da;
  CLI::App* dump = app.add_subcommand(
      "dump-projector", "write a projector in the sparse text format (round-trips exactly)");
  auto* da_g = dump->add_option("--g", da.g, "rank");
  auto* da_s = dump->add_option("--s", da.s, "number of labelled copies");
  dump->add_option("--p", da.p, "prime selecting the eigenvalue base")->required();
  dump->add_option("--disc", da.disc, "squarefree positive discriminant, 0 = rational model");
  dump->add_option("--weight", da.weight,
                   "dump the full carve projector for this weight instead of the pure tensor one");
  dump->add_option("--out", da.out, "output path (default stdout)");
  auto* da_cap = dump->add_option("--cap", da.cap, "basis size cap (overrides WEYL_CARVE_CAP)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (unitary->parsed()) {
      ua.g_given = ua_g->count() > 0;
      ua.p_given = ua_p->count() > 0;
      ua.cap_given = ua_cap->count() > 0;
      return run_unitary(ua);
    }
    if (siegel->parsed()) {
      const uint64_t cap = resolve_cap(sa_cap->count() > 0, sa.cap);
      const auto rep = weylcarve::carve::carve_siegel_checks(sa.g, sa.s, Int(sa.p), cap);
      emit(siegel_json(rep).dump(2) + "\n", sa.out);
      return rep.pass ? 0 : 1;
    }
    const uint64_t cap = resolve_cap(da_cap->count() > 0, da.cap);
    std::string text;
    if (!da.weight.empty()) {
      const Weight a = weylcarve::weights::parse_weight(da.weight, GroupCase::Unitary);
      if (da_g->count() > 0 && a.rank() != da.g)
        throw Error(errc::invalid_argument, "--g disagrees with the weight rank");
      const auto rep =
          weylcarve::carve::carve_unitary(a, std::optional<Int>(Int(da.p)), da.disc, cap);
      text = weylcarve::repspace::dump_linmap(rep.projector);
    } else {
      if (da_g->count() == 0 || da_s->count() == 0)
        throw Error(errc::invalid_argument, "dump-projector requires --g and --s (or --weight)");
      const auto base = da.disc == 0 ? weylcarve::repspace::BaseModule::unitary_rational(da.g)
                                     : weylcarve::repspace::BaseModule::unitary(da.g, da.disc);
      const auto sp = weylcarve::repspace::exterior_module(base, da.s, cap);
      const long m = weylcarve::endoalg::choose_degree_separator(Int(da.p), da.g);
      text = weylcarve::repspace::dump_linmap(
          weylcarve::endoalg::pure_tensor_projector(m, sp).first);
    }
    emit(text, da.out);
    return 0;
  } catch (const Error& e) {
    std::cerr << "carve: error: " << e.what() << "\n";
    return code_of(e);
  } catch (const std::exception& e) {
    std::cerr << "carve: error: " << e.what() << "\n";
    return 2;
  }
}
