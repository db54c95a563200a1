// Command-line surface: analyze Boolean functions, run and verify the
// query algorithms, count class sizes, and emit comparison tables.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsep/algorithms.hpp"
#include "qsep/anf.hpp"
#include "qsep/classical.hpp"
#include "qsep/rng.hpp"
#include "qsep/spec_io.hpp"
#include "qsep/spectrum.hpp"

using namespace qsep;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint32_t kVerifyCap = 1u << 20;

Input parse_input_bits(const std::string& bits, int n) {
  if (int(bits.size()) != n)
    throw std::invalid_argument("input must have exactly " + std::to_string(n) + " bits");
  Input x = 0;
  for (int i = 0; i < n; ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw std::invalid_argument("input must be a 0/1 string");
    if (bits[i] == '1') x |= Input(1) << i;  // leftmost character is x_1
  }
  return x;
}

FunctionSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return parse_function_spec(j);
}

// Default general-family instance: the x' variables split into t blocks,
// every block of size at least t+1.
MainFamilySpec default_main_spec(int n, int t) {
  MainFamilySpec spec;
  spec.n = n;
  spec.t = t;
  int lo = 3 * n / 4 + 1;
  int total = n - lo + 1;
  if (total < t * (t + 1))
    throw SpecError("no feasible g partition: need t*(t+1) <= ceil(n/4)");
  int at = lo;
  for (int b = 0; b < t; ++b) {
    int size = (b == t - 1) ? (n - at + 1) : t + 1;
    std::vector<int> block;
    for (int i = 0; i < size; ++i) block.push_back(at++);
    spec.g_partition.push_back(block);
  }
  spec.validate();
  return spec;
}

PdspSpec product_pair_spec(int n) {
  PdspSpec spec;
  spec.n = n;
  std::vector<int> lead, tail;
  for (int i = 1; i <= n / 2; ++i) lead.push_back(i);
  for (int i = n / 2 + 1; i <= n; ++i) tail.push_back(i);
  spec.hat_vars = lead;
  spec.hat_vars.insert(spec.hat_vars.end(), tail.begin(), tail.end());
  spec.monomials = {lead, tail};
  spec.validate();
  return spec;
}

MmBentSpec identity_mm_spec(int n) {
  MmBentSpec spec;
  spec.n = n;
  spec.phi.resize(std::size_t(1) << (n / 2));
  std::iota(spec.phi.begin(), spec.phi.end(), 0u);
  spec.validate();
  return spec;
}

struct Instance {
  std::string algo;
  int n = 0;
  Program prog;                       // quantum runners
  std::optional<PdspSpec> pdsp;       // parity_pdsp
  std::optional<MmBentSpec> mm;       // parity_mm
  TruthTable table{1};
  std::uint64_t budget = 0;
  ordered_json spec_json;
};

Instance build_instance(const std::string& algo, std::optional<FunctionSpec> spec,
                        int n, int t, std::uint64_t seed, bool corrupt) {
  Instance inst;
  inst.algo = algo;
  if (algo == "algorithm1" || algo == "cor2") {
    if (spec) throw std::invalid_argument("--spec is not used by this algorithm; pass --n");
    if (n <= 0) throw std::invalid_argument("--n is required");
    inst.n = n;
    if (algo == "algorithm1") {
      inst.prog = compile_algorithm1(n, corrupt);
      inst.table = make_pdsp(product_pair_spec(n));
    } else {
      inst.prog = compile_cor2(n);
      Anf f(n);
      f.toggle(range_mask(1, 3 * n / 4));
      f.toggle(range_mask(n / 2 + 1, n));
      inst.table = anf_to_truth_table(f);
    }
    inst.budget = algorithm1_budget(n);
    inst.spec_json = ordered_json{{"class", algo}, {"n", n}};
  } else if (algo == "main") {
    MainFamilySpec ms;
    if (spec) {
      if (!std::holds_alternative<MainFamilySpec>(*spec))
        throw std::invalid_argument("--algo main expects a spec of class 'main'");
      ms = std::get<MainFamilySpec>(*spec);
    } else {
      if (n <= 0) throw std::invalid_argument("--n is required");
      ms = default_main_spec(n, t);
    }
    inst.n = ms.n;
    inst.prog = compile_main_family(ms);
    inst.table = make_main_family(ms).first;
    inst.budget = algorithm1_budget(ms.n);
    inst.spec_json = ordered_json::parse(function_spec_json(ms).dump());
  } else if (algo == "f_id") {
    if (n <= 0 && spec) n = spec_arity(*spec);
    if (n <= 0) throw std::invalid_argument("--n is required");
    inst.n = n;
    inst.prog = compile_f_id(n);
    inst.table = make_f_id(n);
    inst.budget = mm_budget(n);
    inst.spec_json = ordered_json{{"class", "f_id"}, {"n", n}};
  } else if (algo == "gamma" || algo == "gamma_odd") {
    GammaSpec gs;
    if (spec) {
      if (!std::holds_alternative<GammaSpec>(*spec))
        throw std::invalid_argument("this algorithm expects a spec of class 'gamma'");
      gs = std::get<GammaSpec>(*spec);
    } else {
      int base = algo == "gamma_odd" ? n - 1 : n;
      if (n <= 0) throw std::invalid_argument("--n is required");
      gs = random_gamma_spec(base, seed);
    }
    if (algo == "gamma") {
      inst.n = gs.n;
      inst.prog = compile_gamma(gs);
      inst.table = make_gamma(gs);
      inst.budget = mm_budget(gs.n);
    } else {
      inst.n = gs.n + 1;
      inst.prog = compile_gamma_odd(gs);
      TruthTable even = make_gamma(gs);
      TruthTable odd(gs.n + 1);
      for (Input x = 0; x < odd.size(); ++x)
        odd.set(x, even.get(x & ((1u << gs.n) - 1u)) ^ bit_of(x, gs.n + 1));
      inst.table = odd;
      inst.budget = mm_budget(gs.n) + 1;
    }
    inst.spec_json = ordered_json::parse(function_spec_json(gs).dump());
  } else if (algo == "parity_pdsp") {
    PdspSpec ps;
    if (spec && std::holds_alternative<PdspSpec>(*spec))
      ps = std::get<PdspSpec>(*spec);
    else if (spec && std::holds_alternative<MainFamilySpec>(*spec))
      ps = make_main_family(std::get<MainFamilySpec>(*spec)).second;
    else if (n > 0)
      ps = product_pair_spec(n);
    else
      throw std::invalid_argument("parity_pdsp needs --spec (pdsp/main) or --n");
    inst.n = ps.n;
    inst.pdsp = ps;
    inst.table = make_pdsp(ps);
    inst.budget = std::uint64_t(ps.n - ps.q() + 1);
    inst.spec_json = ordered_json::parse(function_spec_json(ps).dump());
  } else if (algo == "parity_mm") {
    MmBentSpec ms;
    if (spec && std::holds_alternative<MmBentSpec>(*spec))
      ms = std::get<MmBentSpec>(*spec);
    else if (spec && std::holds_alternative<GammaSpec>(*spec)) {
      MmBentSpec eq;
      GammaSpec gs = std::get<GammaSpec>(*spec);
      make_gamma(gs, &eq);
      if (eq.phi.empty())
        throw std::invalid_argument("gamma spec is not on the canonical split");
      ms = eq;
    } else if (spec && std::holds_alternative<FIdSpec>(*spec))
      ms = identity_mm_spec(std::get<FIdSpec>(*spec).n);
    else if (n > 0)
      ms = identity_mm_spec(n);
    else
      throw std::invalid_argument("parity_mm needs --spec (mm/gamma/f_id) or --n");
    inst.n = ms.n;
    inst.mm = ms;
    inst.table = make_mm_bent(ms);
    inst.budget = std::uint64_t(ms.n / 2 + 1);
    inst.spec_json = ordered_json::parse(function_spec_json(ms).dump());
  } else {
    throw std::invalid_argument("unknown algorithm '" + algo + "'");
  }
  return inst;
}

ordered_json run_once(const Instance& inst, Input x, const std::string& trace_path) {
  ordered_json out;
  out["algo"] = inst.algo;
  out["n"] = inst.n;
  if (inst.pdsp || inst.mm) {
    ParityTreeTrace tr = inst.pdsp ? pdsp_parity_tree(*inst.pdsp, x)
                                   : mm_generalized_parity_tree(*inst.mm, x);
    out["output"] = tr.output;
    out["queries"] = tr.queries;
    ordered_json parities = ordered_json::array();
    for (auto& [mask, v] : tr.parities) parities.push_back({{"mask", mask}, {"value", v}});
    out["parities"] = parities;
    if (inst.mm) out["two_bit_cost"] = tr.two_bit_cost;
  } else {
    std::vector<TraceRow> rows;
    RunTrace rt = execute(inst.prog, x, trace_path.empty() ? nullptr : &rows);
    out["output"] = rt.output;
    out["queries"] = rt.queries;
    out["final_state_purity"] = rt.final_state_purity;
    out["gate_count"] = rt.gate_count;
    if (!trace_path.empty()) {
      std::ofstream tf(trace_path);
      tf << "step,operation,queries\n";
      for (const auto& r : rows) tf << r.step << "," << r.op << "," << r.queries << "\n";
    }
  }
  out["expected"] = int(inst.table.get(x));
  out["spec"] = inst.spec_json;
  return out;
}

struct VerifyOutcome {
  bool ok = true;
  std::uint64_t inputs_checked = 0;
  Input first_counterexample = 0;
  double wall_seconds = 0.0;
};

VerifyOutcome verify_instance(const Instance& inst, int jobs) {
  std::uint32_t total = inst.table.size();
  if (total > kVerifyCap) throw std::invalid_argument("verification capped at 2^20 inputs");
  auto t0 = std::chrono::steady_clock::now();
  jobs = std::max(1, jobs);
  std::vector<std::int64_t> bad(jobs, -1);
  auto work = [&](int j) {
    std::uint64_t lo = std::uint64_t(total) * j / jobs;
    std::uint64_t hi = std::uint64_t(total) * (j + 1) / jobs;
    for (std::uint64_t x = lo; x < hi; ++x) {
      bool ok;
      if (inst.pdsp) {
        ParityTreeTrace tr = pdsp_parity_tree(*inst.pdsp, Input(x));
        ok = tr.output == int(inst.table.get(Input(x))) &&
             tr.queries == int(inst.budget);
      } else if (inst.mm) {
        ParityTreeTrace tr = mm_generalized_parity_tree(*inst.mm, Input(x));
        ok = tr.output == int(inst.table.get(Input(x))) &&
             tr.queries <= int(inst.budget);
      } else {
        try {
          RunTrace rt = execute(inst.prog, Input(x));
          ok = rt.output == int(inst.table.get(Input(x))) &&
               rt.queries == inst.budget && rt.final_state_purity <= kSupportTol;
        } catch (const std::exception&) {
          ok = false;  // impure measurement counts as a failed input
        }
      }
      if (!ok) {
        bad[j] = std::int64_t(x);
        return;
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& t : threads) t.join();
  }
  VerifyOutcome out;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.inputs_checked = total;
  for (int j = 0; j < jobs; ++j)
    if (bad[j] >= 0 && (out.ok || Input(bad[j]) < out.first_counterexample)) {
      out.ok = false;
      out.first_counterexample = Input(bad[j]);
    }
  return out;
}

ordered_json report_row(const std::string& name, const Instance& inst, int jobs) {
  VerifyOutcome v = verify_instance(inst, jobs);
  int n = inst.n;
  ordered_json row;
  row["name"] = name;
  row["n"] = n;
  row["qc_algo"] = inst.budget;
  bool mm_class = inst.algo == "f_id" || inst.algo == "gamma" || inst.algo == "gamma_odd";
  row["qc_formula"] = mm_class ? mm_budget(inst.algo == "gamma_odd" ? n - 1 : n) +
                                     (inst.algo == "gamma_odd" ? 1 : 0)
                               : algorithm1_budget(n);
  row["dplus_lower"] = dplus_lower_bound(inst.table);
  row["dplus_tree_cost"] = mm_class ? n / 2 + 1 : 0;
  if (!mm_class) row["dplus_tree_cost"] = nullptr;
  row["pdeg"] = real_poly_degree(inst.table);
  if (n <= 12)
    row["brute_D"] = brute_force_D(inst.table);
  else
    row["brute_D"] = nullptr;
  row["verified"] = v.ok && v.inputs_checked == inst.table.size();
  row["inputs_checked"] = v.inputs_checked;
  row["wall_time"] = v.wall_seconds;
  return row;
}

void emit_csv(std::ostream& os, const std::vector<ordered_json>& rows) {
  os << "name,n,qc_algo,qc_formula,dplus_lower,dplus_tree_cost,pdeg,brute_D,"
        "verified,inputs_checked,wall_time\n";
  for (const auto& r : rows) {
    auto cell = [&](const char* key) -> std::string {
      if (r[key].is_null()) return "";
      if (r[key].is_string()) return r[key].get<std::string>();
      return r[key].dump();
    };
    os << cell("name") << "," << cell("n") << "," << cell("qc_algo") << ","
       << cell("qc_formula") << "," << cell("dplus_lower") << ","
       << cell("dplus_tree_cost") << "," << cell("pdeg") << "," << cell("brute_D")
       << "," << cell("verified") << "," << cell("inputs_checked") << ","
       << cell("wall_time") << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quantum query algorithms and Boolean function analysis"};
  app.require_subcommand(1);

  std::string anf_text, hex_text, spec_path, algo, input_bits, trace_path, out_format = "json";
  int n = 0, t = 1, jobs = 1;
  std::uint64_t seed = 0;
  bool corrupt = false;
  std::string n_list;

  auto* analyze = app.add_subcommand("analyze", "Spectral and classical analysis of a function");
  analyze->add_option("--anf", anf_text, "ANF text, e.g. \"x1*x2 + x3*x4\"");
  analyze->add_option("--hex", hex_text, "truth table as hex (with --n)");
  analyze->add_option("--n", n, "variable count for --hex");
  analyze->add_option("--spec", spec_path, "function spec JSON file");

  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--algo", algo,
                    "algorithm1|cor2|main|f_id|gamma|gamma_odd|parity_pdsp|parity_mm")
        ->required();
    cmd->add_option("--spec", spec_path, "function spec JSON file");
    cmd->add_option("--n", n, "variable count");
    cmd->add_option("--t", t, "monomial count of g (main family)");
    cmd->add_option("--seed", seed, "seed for generated gamma specs (splitmix64)");
    cmd->add_flag("--corrupt-gate", corrupt, "")->group("");  // test hook
  };

  auto* run = app.add_subcommand("run", "Run one algorithm on one input");
  add_instance_flags(run);
  run->add_option("--input", input_bits, "input bits, leftmost character is x1")->required();
  run->add_option("--trace", trace_path, "write a gate/oracle trace CSV");

  auto* verify = app.add_subcommand("verify", "Exhaustively check an algorithm against its table");
  add_instance_flags(verify);
  verify->add_option("--jobs", jobs, "parallel verification ranges");

  auto* count = app.add_subcommand("count", "Class sizes");
  std::string count_class;
  count->add_option("--class", count_class, "pdsp|main|gamma")->required();
  count->add_option("--n", n, "variable count")->required();

  auto* report = app.add_subcommand("report", "Comparison table over a list of n");
  report->add_option("--n", n_list, "comma-separated list of n")->required();
  report->add_option("--seed", seed, "seed for the gamma rows");
  report->add_option("--jobs", jobs, "parallel verification ranges");
  report->add_option("--out", out_format, "json|csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      TruthTable tt(1);
      std::string anf_str;
      if (!anf_text.empty()) {
        Anf a = Anf::parse(anf_text);
        tt = anf_to_truth_table(a);
        anf_str = a.str();
      } else if (!hex_text.empty()) {
        if (n <= 0) throw std::invalid_argument("--hex needs --n");
        tt = TruthTable::from_hex(hex_text, n);
        anf_str = truth_table_to_anf(tt).str();
      } else if (!spec_path.empty()) {
        tt = spec_truth_table(load_spec_file(spec_path));
        anf_str = tt.n() <= 16 ? truth_table_to_anf(tt).str() : "";
      } else {
        throw std::invalid_argument("analyze needs --anf, --hex or --spec");
      }
      ordered_json out;
      out["n"] = tt.n();
      out["weight"] = tt.weight();
      out["anf"] = anf_str;
      out["hex"] = tt.to_hex();
      out["pdeg"] = real_poly_degree(tt);
      out["gran_m"] = max_granularity(tt);
      out["dplus_lb"] = dplus_lower_bound(tt);
      if (tt.n() <= 5) {
        out["D"] = brute_force_D(tt);
        out["Dplus"] = brute_force_Dplus(tt);
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    std::optional<FunctionSpec> spec;
    if (!spec_path.empty()) spec = load_spec_file(spec_path);

    if (*run) {
      Instance inst = build_instance(algo, spec, n, t, seed, corrupt);
      Input x = parse_input_bits(input_bits, inst.n);
      std::cout << run_once(inst, x, trace_path).dump(2) << "\n";
      return 0;
    }

    if (*verify) {
      Instance inst = build_instance(algo, spec, n, t, seed, corrupt);
      VerifyOutcome v = verify_instance(inst, jobs);
      ordered_json out;
      out["algo"] = inst.algo;
      out["n"] = inst.n;
      out["queries"] = inst.budget;
      out["verified"] = v.ok;
      out["inputs_checked"] = v.inputs_checked;
      out["wall_time"] = v.wall_seconds;
      if (!v.ok) {
        std::string bits(inst.n, '0');
        for (int i = 0; i < inst.n; ++i)
          if (bit_of(v.first_counterexample, i + 1)) bits[i] = '1';
        out["first_counterexample"] = bits;
      }
      std::cout << out.dump(2) << "\n";
      return v.ok ? 0 : 2;
    }

    if (*count) {
      ordered_json out;
      out["class"] = count_class;
      out["n"] = n;
      if (count_class == "pdsp" || count_class == "main") {
        if (n < 4) throw std::invalid_argument("n too small (need n >= 4)");
        out["count"] = count_main_family(n).str();
      } else if (count_class == "gamma") {
        auto [raw, quotient] = count_gamma_raw(n);
        out["raw"] = raw.str();
        out["pnp_quotient_lower_bound"] = quotient.str();
      } else {
        throw std::invalid_argument("unknown class '" + count_class + "'");
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*report) {
      std::vector<int> ns;
      std::size_t pos = 0;
      while (pos < n_list.size()) {
        std::size_t comma = n_list.find(',', pos);
        if (comma == std::string::npos) comma = n_list.size();
        ns.push_back(std::stoi(n_list.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      std::vector<ordered_json> rows;
      for (int nn : ns) {
        if (nn % 4 == 2 && nn >= 6) {
          rows.push_back(report_row("f1", build_instance("algorithm1", {}, nn, 1, seed, false), jobs));
          rows.push_back(report_row("f2", build_instance("cor2", {}, nn, 1, seed, false), jobs));
          if ((nn + 3) / 4 >= 2)
            rows.push_back(report_row("main_t1", build_instance("main", {}, nn, 1, seed, false), jobs));
        }
        if (nn % 2 == 0 && nn >= 4) {
          rows.push_back(report_row("f_id", build_instance("f_id", {}, nn, 1, seed, false), jobs));
          rows.push_back(report_row("gamma", build_instance("gamma", {}, nn, 1, seed, false), jobs));
        }
      }
      if (out_format == "csv") {
        emit_csv(std::cout, rows);
      } else {
        ordered_json out = ordered_json::array();
        for (auto& r : rows) out.push_back(r);
        std::cout << out.dump(2) << "\n";
      }
      return 0;
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
