#include "summa/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#ifdef SUMMA_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "summability/corpus.hpp"
#include "summability/engine.hpp"
#include "summability/error.hpp"
#include "summability/kernel_io.hpp"
#include "summability/spectrum.hpp"

namespace summa {
namespace {

namespace sm = summability;
using json = nlohmann::json;

struct Globals {
  std::optional<double> tol;
  std::optional<double> tol_quad;
  std::optional<int> max_ladder;
  std::string output = "json";
  std::optional<std::uint64_t> seed;  // reserved
  std::string config;
  unsigned jobs = 1;
};

struct Settings {
  sm::EngineOptions engine;
  double spectrum_window = 50.0;
  std::size_t spectrum_points = 401;
  unsigned jobs = 1;
};

void check_positive(const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw sm::Error(sm::ErrorCode::ConfigError, std::string(name) + " must be a positive number");
  }
}

Settings resolve_settings(const Globals& g) {
  Settings s;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw sm::Error(sm::ErrorCode::ConfigError, "cannot open config " + g.config);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw sm::Error(sm::ErrorCode::ConfigError, g.config + ": " + e.what());
    }
    if (!doc.is_object()) throw sm::Error(sm::ErrorCode::ConfigError, "config must be a JSON object");
    try {
      for (const auto& [key, value] : doc.items()) {
        if (key == "tol_limit") {
          s.engine.tol_limit = value.get<double>();
        } else if (key == "tol_quad") {
          s.engine.tol_quad = value.get<double>();
        } else if (key == "max_ladder") {
          s.engine.max_ladder = value.get<int>();
        } else if (key == "window") {
          s.engine.window = value.get<int>();
        } else if (key == "x0") {
          s.engine.x0 = value.get<double>();
        } else if (key == "ratio") {
          s.engine.ratio = value.get<double>();
        } else if (key == "cache_step") {
          s.engine.cache_step = value.get<double>();
        } else if (key == "accelerate") {
          s.engine.accelerate = value.get<bool>();
        } else if (key == "spectrum_window") {
          s.spectrum_window = value.get<double>();
        } else if (key == "spectrum_points") {
          s.spectrum_points = value.get<std::size_t>();
        } else if (key == "jobs") {
          s.jobs = value.get<unsigned>();
        } else {
          throw sm::Error(sm::ErrorCode::ConfigError, "unknown config key '" + key + "'");
        }
      }
    } catch (const json::exception& e) {
      throw sm::Error(sm::ErrorCode::ConfigError, g.config + ": " + e.what());
    }
  }
  if (g.tol) s.engine.tol_limit = *g.tol;
  if (g.tol_quad) s.engine.tol_quad = *g.tol_quad;
  if (g.max_ladder) s.engine.max_ladder = *g.max_ladder;
  if (g.jobs > 1) s.jobs = g.jobs;
  if (s.engine.tol_limit) check_positive("tol", *s.engine.tol_limit);
  check_positive("tol_quad", s.engine.tol_quad);
  check_positive("cache_step", s.engine.cache_step);
  check_positive("x0", s.engine.x0);
  if (!(s.engine.ratio > 1.0)) throw sm::Error(sm::ErrorCode::ConfigError, "ratio must exceed 1");
  if (s.engine.max_ladder < 0) throw sm::Error(sm::ErrorCode::ConfigError, "max_ladder must be >= 0");
  if (s.engine.window < 2) throw sm::Error(sm::ErrorCode::ConfigError, "window must be >= 2");
  check_positive("spectrum_window", s.spectrum_window);
  if (s.spectrum_points < 3) throw sm::Error(sm::ErrorCode::ConfigError, "spectrum_points must be >= 3");
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

json verdict_json(const sm::SpectrumProfile& p) {
  const auto& v = p.verdict;
  json j{{"verdict", sm::to_string(v.kind)},
         {"analytic", p.analytic ? json(*p.analytic) : json(nullptr)},
         {"margin", v.margin},
         {"min_modulus", p.min_modulus},
         {"lipschitz_bound", p.lipschitz_bound ? json(*p.lipschitz_bound) : json(nullptr)},
         {"grid_step", p.grid_step},
         {"window", p.window},
         {"reason", v.reason}};
  j["zero_frequency"] = v.kind == sm::VerdictKind::ZeroFound ? json(v.zero_frequency) : json(nullptr);
  j["zero_modulus"] = v.kind == sm::VerdictKind::ZeroFound ? json(v.zero_modulus) : json(nullptr);
  return j;
}

sm::MethodDescriptor resolve_method(const std::string& label, const sm::MethodCatalog& catalog) {
  if (const auto it = catalog.find(label); it != catalog.end()) return it->second;
  if (label.rfind("catalog:", 0) == 0 || label.rfind("file:", 0) == 0) {
    return sm::make_method(sm::parse_kernel_spec(label), sm::Variant::Forward, 1, label);
  }
  std::string known;
  for (const auto& [k, _] : catalog) known += (known.empty() ? "" : ", ") + k;
  throw sm::Error(sm::ErrorCode::ParseError, "unknown method '" + label + "' (known: " + known + ")");
}

std::vector<double> parse_args(const std::string& inner, const std::string& name) {
  std::vector<double> out;
  std::stringstream ss(inner);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sm::Error(sm::ErrorCode::ParseError, "bad argument '" + item + "' to " + name);
    }
  }
  return out;
}

int exit_for(const sm::Error& e) {
  switch (e.code()) {
    case sm::ErrorCode::QuadratureFailed:
    case sm::ErrorCode::TransformFailed: return kExitInconclusive;
    default: return kExitUsage;
  }
}

void write_trace(const std::string& path, const sm::SummationResult& r) {
  std::ofstream out(path);
  if (!out) throw sm::Error(sm::ErrorCode::ConfigError, "cannot write trace " + path);
  out << std::setprecision(17) << "x,re,im\n";
  for (const auto& p : r.trace) out << p.x << ',' << p.value.real() << ',' << p.value.imag() << '\n';
}

json result_json(const sm::SummationResult& r) {
  json j = sm::to_json(r);
  j["trace_points"] = r.trace.size();
  return j;
}

}  // namespace

sm::TestFunction resolve_function(const std::string& spec, sm::Flavor flavor) {
  std::string name = spec;
  if (name.rfind("catalog:", 0) == 0) name = name.substr(8);
  if (const auto at = name.find('@'); at != std::string::npos) {
    const std::string suffix = name.substr(at + 1);
    const sm::Flavor want = suffix == "add" ? sm::Flavor::Additive : sm::Flavor::Multiplicative;
    if (suffix != "add" && suffix != "mul") throw sm::Error(sm::ErrorCode::ParseError, "flavor suffix must be @add or @mul");
    if (want != flavor) {
      throw sm::Error(sm::ErrorCode::FlavorMismatch, spec + " does not live on the " + sm::to_string(flavor) + " domain");
    }
    name = name.substr(0, at);
  }
  const std::string full = name + (flavor == sm::Flavor::Additive ? "@add" : "@mul");
  const auto corpus = sm::builtin_corpus();
  if (const auto* f = sm::find_function(corpus, full)) return *f;

  std::string base = name;
  std::vector<double> args;
  if (const auto open = name.find('('); open != std::string::npos) {
    if (name.back() != ')') throw sm::Error(sm::ErrorCode::ParseError, "unbalanced parentheses in " + spec);
    base = name.substr(0, open);
    args = parse_args(name.substr(open + 1, name.size() - open - 2), base);
  }
  const auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw sm::Error(sm::ErrorCode::ParseError, base + " takes " + std::to_string(n) + " argument(s)");
    }
  };
  using namespace sm::functions;
  if (base == "const") {
    if (args.size() == 2) return constant(flavor, {args[0], args[1]});
    need(1);
    return constant(flavor, args[0]);
  }
  if (base == "decay") return need(1), exp_decay(flavor, args[0]);
  if (base == "recip") return need(1), reciprocal_decay(flavor, args[0]);
  if (base == "sin") return need(0), sine(flavor);
  if (base == "cos") return need(0), cosine(flavor);
  if (base == "char" || base == "mchar") {
    need(1);
    if (flavor == sm::Flavor::Additive) return additive_character(args[0]);
    return multiplicative_character(args[0]);
  }
  if (base == "chirp" || base == "alt" || base == "alt01" || base == "block5") {
    throw sm::Error(sm::ErrorCode::FlavorMismatch, base + " is not defined on the " + sm::to_string(flavor) + " domain");
  }
  throw sm::Error(sm::ErrorCode::ParseError,
                  "unknown function '" + spec + "' (try sin, cos, const(c), decay(a), recip(a), char(a), chirp, alt, "
                  "alt01, block5)");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"summa: convolution-kernel summability methods on the half-line"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "limit tolerance (default 1e-4 (1 + |f|))");
  app.add_option("--tol-quad", g.tol_quad, "quadrature tolerance");
  app.add_option("--max-ladder", g.max_ladder, "largest ladder index j in x0 * ratio^j");
  app.add_option("--output", g.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "reserved");
  app.add_option("--config", g.config, "JSON file overriding defaults");
  app.add_option("--jobs", g.jobs, "worker threads for verify")->check(CLI::PositiveNumber);

  std::string kernel_spec;
  std::string function_spec;
  std::string variant = "forward";
  int iterations = 1;
  std::string trace_path;
  std::optional<double> window;
  std::optional<std::size_t> points;
  std::string csv_path;
  std::vector<std::string> compare_args;
  std::string cases_path;
  bool list_cases = false;

  auto* classify = app.add_subcommand("classify", "Wiener verdict for a kernel");
  classify->add_option("kernel", kernel_spec, "catalog:<name>(<params>) or file:<path>")->required();
  classify->add_option("--window", window, "frequency window half-width");
  classify->add_option("--points", points, "coarse grid points");

  auto* sum = app.add_subcommand("sum", "estimate a generalized limit");
  sum->add_option("--kernel", kernel_spec, "kernel spec")->required();
  sum->add_option("--function", function_spec, "test function, e.g. catalog:sin")->required();
  sum->add_option("--variant", variant, "forward or dual")->check(CLI::IsMember({"forward", "dual"}));
  sum->add_option("--iterations", iterations, "k-fold application")->check(CLI::PositiveNumber);
  sum->add_option("--trace", trace_path, "write the ladder trace as CSV");

  auto* compare = app.add_subcommand("compare", "run several methods on one function");
  compare->add_option("items", compare_args, "METHOD... FUNCTION")->required()->expected(2, -1);

  auto* spectrum = app.add_subcommand("spectrum", "tabulate the kernel transform");
  spectrum->add_option("kernel", kernel_spec, "kernel spec")->required();
  spectrum->add_option("--window", window, "frequency window half-width");
  spectrum->add_option("--points", points, "grid points");
  spectrum->add_option("--csv", csv_path, "also write the table to this CSV file");

  auto* verify = app.add_subcommand("verify", "run the verification matrix");
  verify->add_option("--cases", cases_path, "JSON case file (default: builtin matrix)");
  verify->add_flag("--list", list_cases, "list case ids and exit");

  auto* demo = app.add_subcommand("demo", "counterexample separation and the dual pair, end to end");

  for (auto* sub : {classify, sum, compare, spectrum, verify, demo}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  const bool csv = g.output == "csv";
  try {
    const Settings s = resolve_settings(g);
    out << std::setprecision(17);

    if (classify->parsed()) {
      const sm::Kernel k = sm::parse_kernel_spec(kernel_spec);
      sm::SpectrumOptions so;
      so.window = window.value_or(s.spectrum_window);
      so.coarse_points = points.value_or(s.spectrum_points);
      const auto p = sm::classify_wiener(k, so);
      if (csv) {
        const auto& v = p.verdict;
        out << "kernel,flavor,verdict,analytic_proof,margin,zero_frequency,zero_modulus,min_modulus\n"
            << csv_escape(k.label()) << ',' << sm::to_string(k.flavor()) << ',' << sm::to_string(v.kind) << ','
            << csv_escape(p.analytic.value_or("")) << ',' << v.margin << ',';
        if (v.kind == sm::VerdictKind::ZeroFound) out << v.zero_frequency << ',' << v.zero_modulus;
        else out << ',';
        out << ',' << p.min_modulus << '\n';
      } else {
        json j = verdict_json(p);
        j["kernel"] = k.label();
        j["flavor"] = sm::to_string(k.flavor());
        out << j.dump(2) << '\n';
      }
      return p.verdict.kind == sm::VerdictKind::Inconclusive ? kExitInconclusive : kExitOk;
    }

    if (sum->parsed()) {
      const sm::Kernel k = sm::parse_kernel_spec(kernel_spec);
      const sm::TestFunction f = resolve_function(function_spec, k.flavor());
      const auto m = sm::make_method(k, variant == "dual" ? sm::Variant::Dual : sm::Variant::Forward, iterations);
      const auto r = sm::estimate_limit(m, f, s.engine);
      if (!trace_path.empty()) write_trace(trace_path, r);
      if (csv) {
        out << "kernel,function,variant,iterations,status,estimate_re,estimate_im,amplitude,evaluations\n"
            << csv_escape(k.label()) << ',' << csv_escape(f.label) << ',' << variant << ',' << iterations << ','
            << sm::to_string(r.status) << ',';
        if (r.estimate) out << r.estimate->real() << ',' << r.estimate->imag();
        else out << ',';
        out << ',' << r.oscillation_amplitude << ',' << r.evaluations << '\n';
      } else {
        json j = result_json(r);
        j["kernel"] = k.label();
        j["function"] = f.label;
        j["variant"] = variant;
        j["iterations"] = iterations;
        out << j.dump(2) << '\n';
      }
      return r.status == sm::LimitStatus::Inconclusive ? kExitInconclusive : kExitOk;
    }

    if (compare->parsed()) {
      const auto catalog = sm::builtin_methods();
      std::vector<sm::MethodDescriptor> ms;
      for (std::size_t i = 0; i + 1 < compare_args.size(); ++i) ms.push_back(resolve_method(compare_args[i], catalog));
      const sm::Flavor fl = ms.front().flavor();
      for (const auto& m : ms) {
        if (m.flavor() != fl) throw sm::Error(sm::ErrorCode::FlavorMismatch, "compared methods must share a flavor");
      }
      const sm::TestFunction f = resolve_function(compare_args.back(), fl);
      const double tol = s.engine.tol_limit.value_or(1e-4 * (1.0 + f.bound));
      std::vector<sm::SummationResult> rs;
      for (const auto& m : ms) rs.push_back(sm::estimate_limit(m, f, s.engine));
      bool inconclusive = false;
      bool same_status = true;
      double max_dev = 0.0;
      for (std::size_t i = 0; i < rs.size(); ++i) {
        inconclusive = inconclusive || rs[i].status == sm::LimitStatus::Inconclusive;
        same_status = same_status && rs[i].status == rs.front().status;
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
          if (rs[i].estimate && rs[j].estimate) {
            max_dev = std::max(max_dev, std::abs(*rs[i].estimate - *rs[j].estimate));
          }
        }
      }
      const bool agree = same_status && max_dev < 2.0 * tol;
      if (csv) {
        out << "method,status,estimate_re,estimate_im,amplitude,evaluations\n";
        for (std::size_t i = 0; i < rs.size(); ++i) {
          out << csv_escape(ms[i].label) << ',' << sm::to_string(rs[i].status) << ',';
          if (rs[i].estimate) out << rs[i].estimate->real() << ',' << rs[i].estimate->imag();
          else out << ',';
          out << ',' << rs[i].oscillation_amplitude << ',' << rs[i].evaluations << '\n';
        }
      } else {
        json results = json::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
          json j = result_json(rs[i]);
          j["method"] = ms[i].label;
          results.push_back(std::move(j));
        }
        out << json{{"function", f.label},
                    {"results", std::move(results)},
                    {"max_deviation", max_dev},
                    {"tolerance", 2.0 * tol},
                    {"agree", agree}}
                   .dump(2)
            << '\n';
      }
      if (inconclusive) return kExitInconclusive;
      return agree ? kExitOk : kExitVerificationFailure;
    }

    if (spectrum->parsed()) {
      const sm::Kernel k = sm::parse_kernel_spec(kernel_spec);
      const double w = window.value_or(s.spectrum_window);
      const std::size_t n = points.value_or(s.spectrum_points);
      const auto table = sm::tabulate_transform(k, w, n);
      sm::SpectrumOptions so;
      so.window = w;
      const auto p = sm::classify_wiener(k, so);
      const auto write_csv = [&](std::ostream& os) {
        os << std::setprecision(17) << "freq,re,im,modulus\n";
        for (std::size_t i = 0; i < table.frequencies.size(); ++i) {
          const auto v = table.values[i];
          os << table.frequencies[i] << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
        }
      };
      if (!csv_path.empty()) {
        std::ofstream file(csv_path);
        if (!file) throw sm::Error(sm::ErrorCode::ConfigError, "cannot write " + csv_path);
        write_csv(file);
      }
      if (csv) {
        write_csv(out);
        err << verdict_json(p).dump() << '\n';
      } else {
        json rows = json::array();
        for (std::size_t i = 0; i < table.frequencies.size(); ++i) {
          const auto v = table.values[i];
          rows.push_back({table.frequencies[i], v.real(), v.imag(), std::abs(v)});
        }
        out << json{{"kernel", k.label()},
                    {"flavor", sm::to_string(k.flavor())},
                    {"window", w},
                    {"columns", {"freq", "re", "im", "modulus"}},
                    {"points", std::move(rows)},
                    {"verdict", verdict_json(p)}}
                   .dump(2)
            << '\n';
      }
      return p.verdict.kind == sm::VerdictKind::Inconclusive ? kExitInconclusive : kExitOk;
    }

    if (verify->parsed() || demo->parsed()) {
      std::vector<sm::VerificationCase> cases;
      if (demo->parsed()) {
        for (auto& c : sm::builtin_cases()) {
          if (c.id == "separation/additive" || c.id == "dual/sin") cases.push_back(std::move(c));
        }
      } else {
        cases = cases_path.empty() ? sm::builtin_cases() : sm::load_cases(cases_path);
      }
      if (list_cases) {
        for (const auto& c : cases) out << c.id << '\n';
        return kExitOk;
      }
      sm::MatrixOptions mo;
      mo.engine = s.engine;
      mo.jobs = s.jobs;
      const auto report = sm::run_matrix(cases, mo);
      std::optional<sm::SpectrumProfile> cex;
      if (demo->parsed()) cex = sm::classify_wiener(sm::Kernel::counterexample_additive(1.0));
      const bool zero_ok = !cex || (cex->verdict.kind == sm::VerdictKind::ZeroFound &&
                                    std::abs(cex->verdict.zero_frequency - 1.0) < 1e-6);
      if (csv) {
        out << "id,passed,seconds,message\n";
        for (const auto& c : report.cases) {
          out << csv_escape(c.id) << ',' << (c.passed ? "true" : "false") << ',' << c.seconds << ','
              << csv_escape(c.message) << '\n';
        }
        if (cex) out << "classify/counterexample_additive(1)," << (zero_ok ? "true" : "false") << ",0,\n";
      } else {
        json j = sm::to_json(report);
        if (cex) {
          json v = verdict_json(*cex);
          v["passed"] = zero_ok;
          j["classify_counterexample"] = std::move(v);
        }
        out << j.dump(2) << '\n';
      }
      return report.all_passed() && zero_ok ? kExitOk : kExitVerificationFailure;
    }
  } catch (const sm::Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace summa
