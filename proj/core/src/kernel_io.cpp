#include "summability/kernel_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "summability/error.hpp"

namespace summability {
namespace {

const char* param_name(CatalogId id) {
  switch (id) {
    case CatalogId::Exponential: return "rate";
    case CatalogId::PowerLaw: return "r";
    case CatalogId::CounterexampleAdditive:
    case CatalogId::CounterexampleMultiplicative: return "alpha";
    case CatalogId::Mixture: return "";
  }
  return "";
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
  return v;
}

Complex parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorCode::ParseError, "expected a number or [re, im], got " + j.dump());
}

CatalogEntry entry_from_json(const nlohmann::json& j) {
  const auto name = j.at("catalog").get<std::string>();
  const auto id = parse_catalog_id(name);
  if (!id) throw Error(ErrorCode::ParseError, "unknown catalog kernel '" + name + "'");
  CatalogEntry e{*id, {}, {}};
  if (*id == CatalogId::Mixture) {
    const auto& terms = j.at("terms");
    if (!terms.is_array() || terms.empty()) throw Error(ErrorCode::ParseError, "mixture needs a nonempty terms array");
    for (const auto& t : terms) {
      e.components.push_back({t.contains("coefficient") ? parse_complex(t.at("coefficient")) : Complex{1.0, 0.0},
                              entry_from_json(t)});
    }
    return e;
  }
  const auto& params = j.at("params");
  const char* key = param_name(*id);
  if (params.is_object()) {
    e.params.push_back(params.at(key).get<double>());
  } else if (params.is_array() && params.size() == 1) {
    e.params.push_back(params[0].get<double>());
  } else {
    throw Error(ErrorCode::ParseError, std::string("params for ") + name + " must be {\"" + key + "\": value}");
  }
  return e;
}

nlohmann::json entry_to_json(const CatalogEntry& e) {
  nlohmann::json j{{"catalog", to_string(e.id)}};
  if (e.id == CatalogId::Mixture) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& c : e.components) {
      nlohmann::json t = entry_to_json(c.entry);
      t["coefficient"] = {c.coefficient.real(), c.coefficient.imag()};
      terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
  } else {
    j["params"] = {{param_name(e.id), e.params.at(0)}};
  }
  return j;
}

Flavor default_flavor(const CatalogEntry& e) {
  switch (e.id) {
    case CatalogId::Exponential:
    case CatalogId::CounterexampleAdditive: return Flavor::Additive;
    case CatalogId::PowerLaw:
    case CatalogId::CounterexampleMultiplicative: return Flavor::Multiplicative;
    case CatalogId::Mixture: break;
  }
  if (e.components.empty()) throw Error(ErrorCode::ParseError, "mixture needs a flavor");
  return default_flavor(e.components.front().entry);
}

}  // namespace

std::optional<CatalogId> parse_catalog_id(std::string_view name) {
  for (auto id : {CatalogId::Exponential, CatalogId::PowerLaw, CatalogId::CounterexampleAdditive,
                  CatalogId::CounterexampleMultiplicative, CatalogId::Mixture}) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

std::optional<Flavor> parse_flavor(std::string_view name) {
  if (name == "additive") return Flavor::Additive;
  if (name == "multiplicative") return Flavor::Multiplicative;
  return std::nullopt;
}

Kernel parse_kernel_spec(std::string_view spec) {
  const std::string s = trim(spec);
  if (s.rfind("file:", 0) == 0) return load_kernel_file(s.substr(5));
  if (s.rfind("catalog:", 0) != 0) {
    if (s.find('(') != std::string::npos || s.empty()) {
      throw Error(ErrorCode::ParseError, "kernel spec must be catalog:<name>(<params>) or file:<path>");
    }
    return load_kernel_file(s);
  }
  const std::string body = s.substr(8);
  const auto open = body.find('(');
  if (open == std::string::npos || body.back() != ')') {
    throw Error(ErrorCode::ParseError, "expected catalog:<name>(<params>), got '" + s + "'");
  }
  const std::string name = trim(body.substr(0, open));
  const auto id = parse_catalog_id(name);
  if (!id || *id == CatalogId::Mixture) {
    throw Error(ErrorCode::ParseError, "unknown catalog kernel '" + name + "' (mixtures need a spec file)");
  }
  std::vector<double> params;
  std::stringstream args(body.substr(open + 1, body.size() - open - 2));
  for (std::string item; std::getline(args, item, ',');) params.push_back(parse_real(trim(item)));
  if (params.size() != 1) {
    throw Error(ErrorCode::ParseError, name + " takes exactly one parameter (" + param_name(*id) + ")");
  }
  const CatalogEntry e{*id, params, {}};
  return Kernel::from_catalog(default_flavor(e), e);
}

Kernel kernel_from_json(const nlohmann::json& doc) {
  try {
    const nlohmann::json& j = doc.contains("body") ? doc.at("body") : doc;
    std::optional<Flavor> flavor;
    if (doc.contains("flavor")) {
      flavor = parse_flavor(doc.at("flavor").get<std::string>());
      if (!flavor) throw Error(ErrorCode::ParseError, "flavor must be additive or multiplicative");
    }
    Kernel k = [&] {
      if (j.contains("samples")) {
        if (!flavor) throw Error(ErrorCode::ParseError, "sampled kernels need a flavor");
        std::vector<double> ts;
        std::vector<Complex> vs;
        for (const auto& row : j.at("samples")) {
          if (!row.is_array() || row.size() < 2 || row.size() > 3) {
            throw Error(ErrorCode::ParseError, "samples rows are [t, re] or [t, re, im]");
          }
          ts.push_back(row[0].get<double>());
          vs.emplace_back(row[1].get<double>(), row.size() == 3 ? row[2].get<double>() : 0.0);
        }
        return Kernel::sampled(*flavor, std::move(ts), std::move(vs));
      }
      const CatalogEntry e = entry_from_json(j);
      return Kernel::from_catalog(flavor.value_or(default_flavor(e)), e);
    }();
    if (doc.value("normalize", false)) k = normalize(k);
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed kernel spec: ") + e.what());
  }
}

nlohmann::json kernel_to_json(const Kernel& k) {
  nlohmann::json j{{"flavor", to_string(k.flavor())}};
  if (const auto* cf = std::get_if<ClosedForm>(&k.body())) {
    j["body"] = entry_to_json(cf->entry);
    return j;
  }
  const auto& s = std::get<Sampled>(k.body());
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const double t = k.flavor() == Flavor::Additive ? s.nodes[i] : std::exp(s.nodes[i]);
    rows.push_back({t, s.values[i].real(), s.values[i].imag()});
  }
  j["body"] = {{"samples", std::move(rows)}};
  return j;
}

Kernel load_kernel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open kernel spec " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return kernel_from_json(doc);
}

}  // namespace summability
