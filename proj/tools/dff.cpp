// Command-line front end. Exit codes: 0 positive verdict, 1 negative verdict,
// 2 inconclusive, 3 errors (bad input, bad parameters, I/O).

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "dff/compendium.hpp"
#include "dff/error.hpp"
#include "dff/extremality.hpp"
#include "dff/gjlink.hpp"
#include "dff/io.hpp"
#include "dff/maximality.hpp"
#include "dff/search.hpp"
#include "dff/svg.hpp"

namespace {

using namespace dff;

constexpr int kExitError = 3;

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DFF_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

Rational parse_rational(const std::string& s) { return Rational::parse(s); }

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    out.push_back(parse_rational(s.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::kBadParameter, "expected K=V, got " + s);
    p[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
  }
  return p;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) std::cout << dump(j);
  else write_text(out, dump(j));
}

GjFunction family(const std::string& name, const Rational& b) {
  if (name == "sawtooth") return gmic(b);
  if (name == "sawtooth3") return sawtooth_mix(b, Rational(3, 4));
  if (name == "sawtooth4") return sawtooth_mix(b, Rational(1, 2));
  throw Error(ErrorKind::kUnknownName, "family " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual feasible functions: maximality and extremality tests, search, conversions"};
  app.require_subcommand(1);

  std::string file, out, mode = "continuous", fam = "sawtooth", a_str, b_str, lambda_str, row_str, rhs_str, name,
                           dir;
  int q = 0, size = 480;
  bool no_minimize = false, restrict = false, components = false, no_borders = false;
  std::vector<std::string> params;

  auto* maximality = app.add_subcommand("maximality", "Test a dff-pwl-v1 file for maximality");
  maximality->add_option("file", file)->required();
  auto* extremality = app.add_subcommand("extremality", "Test a dff-pwl-v1 file for extremality");
  extremality->add_option("file", file)->required();

  auto* search = app.add_subcommand("search", "Enumerate the vertices of the q-grid polytope and filter extreme ones");
  search->add_option("--q", q, "grid size")->required();
  search->add_option("--mode", mode, "continuous or discontinuous");
  search->add_option("--out", out, "directory for report.json and functions/");
  search->add_flag("--no-minimize", no_minimize, "skip the redundancy count");

  auto* convert = app.add_subcommand("convert", "Convert a minimal Gomory-Johnson function to a general DFF");
  convert->add_option("--family", fam, "sawtooth, sawtooth3 or sawtooth4");
  convert->add_option("--b", b_str, "right-hand side, not an integer")->required();
  convert->add_option("--lambda", lambda_str)->required();
  convert->add_flag("--restrict", restrict, "write the restriction to [0,1] and report its verdicts");
  convert->add_option("--out", out, "output file (default: stdout)");

  auto* plot = app.add_subcommand("plot", "Render the additivity diagram as SVG");
  plot->add_option("file", file)->required();
  plot->add_option("--out", out)->required();
  plot->add_flag("--components", components, "color faces and shadows by covered component");
  plot->add_flag("--no-borders", no_borders, "omit the function graph on the borders");
  plot->add_option("--size", size, "canvas size in pixels");

  auto* compendium = app.add_subcommand("compendium", "Named families and stored functions");
  compendium->require_subcommand(1);
  compendium->add_option("--dir", dir, "also load a compendium directory");
  auto* c_list = compendium->add_subcommand("list", "List family names");
  auto* c_get = compendium->add_subcommand("get", "Write one function");
  c_get->add_option("name", name)->required();
  c_get->add_option("--param", params, "K=V, repeatable");
  c_get->add_option("--out", out);
  auto* c_export = compendium->add_subcommand("export", "Write the built-in compendium to a directory");
  c_export->add_option("target", out)->required();

  auto* bound = app.add_subcommand("bound", "Lueker lower bound for items uniform on [a,b]");
  bound->add_option("file", file)->required();
  bound->add_option("--a", a_str)->required();
  bound->add_option("--b", b_str)->required();

  auto* cut = app.add_subcommand("cut", "Apply a general DFF to a row a.x <= rhs");
  cut->add_option("file", file)->required();
  cut->add_option("--row", row_str, "comma-separated coefficients")->required();
  cut->add_option("--rhs", rhs_str)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*maximality) {
      auto v = maximality_test(load_pwl(file));
      std::cout << dump(to_json(v));
      return v.is_maximal ? 0 : 1;
    }
    if (*extremality) {
      auto v = extremality_test(load_pwl(file));
      std::cout << dump(to_json(v));
      switch (v.status) {
        case ExtremalityStatus::kExtreme: return 0;
        case ExtremalityStatus::kNotExtreme: return 1;
        case ExtremalityStatus::kInconclusive: return 2;
      }
    }
    if (*search) {
      SearchOptions opt;
      opt.mode = parse_search_mode(mode);
      opt.minimize = !no_minimize;
      opt.threads = worker_count();
      if (!out.empty()) opt.functions_dir = std::filesystem::path(out) / "functions";
      SearchReport rep = search_extreme(q, opt);
      Json j = to_json(rep);
      if (!out.empty()) write_text(std::filesystem::path(out) / "report.json", dump(j));
      std::cout << dump(j);
      std::cerr << "enumeration " << rep.seconds_enumeration << " s, filter " << rep.seconds_filter << " s\n";
      return 0;
    }
    if (*convert) {
      GdffFunction psi = gj_to_gdff(family(fam, parse_rational(b_str)), parse_rational(lambda_str));
      if (!restrict) {
        emit(to_json(psi), out);
        return 0;
      }
      PwlFunction phi = restrict_to_unit(psi);
      emit(to_json(phi), out);
      auto m = maximality_test(phi);
      auto e = extremality_test(phi);
      std::cerr << "maximal: " << (m.is_maximal ? "true" : "false") << ", extremality: " << to_string(e.status) << "\n";
      return 0;
    }
    if (*plot) {
      PlotSpec spec;
      spec.color_by_component = components;
      spec.show_function_on_borders = !no_borders;
      spec.canvas_size = size;
      write_text(out, render_svg(load_pwl(file), spec));
      return 0;
    }
    if (*compendium) {
      Registry reg;
      if (!dir.empty()) load_compendium(dir, reg);
      if (*c_list) {
        for (const auto& n : reg.list()) std::cout << n << "\n";
        return 0;
      }
      if (*c_get) {
        emit(to_json(reg.get(name, parse_params(params))), out);
        return 0;
      }
      if (*c_export) {
        write_compendium(out, builtin_compendium());
        return 0;
      }
    }
    if (*bound) {
      Rational v = lueker_bound(load_pwl(file), parse_rational(a_str), parse_rational(b_str));
      Json j;
      j["bound"] = v.str();
      j["approx"] = v.to_double();
      std::cout << dump(j);
      return 0;
    }
    if (*cut) {
      auto [coeffs, rhs] = generate_cut(load_gdff(file), parse_list(row_str), parse_rational(rhs_str));
      Json j;
      j["row"] = Json::array();
      for (const auto& c : coeffs) j["row"].push_back(c.str());
      j["rhs"] = rhs.str();
      std::cout << dump(j);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
