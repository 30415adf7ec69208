#include "scatter1d/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "scatter1d/errors.hpp"

namespace scatter1d {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* name : allowed)
      if (item.key() == name) {
        ok = true;
        break;
      }
    if (!ok) throw BadInput("unknown field \"" + item.key() + "\" in potential JSON");
  }
}

std::vector<double> number_array(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array())
    throw BadInput(std::string("missing array field \"") + field + "\"");
  std::vector<double> out;
  for (const auto& e : j[field]) {
    if (!e.is_number()) throw BadInput(std::string("non-numeric entry in \"") + field + "\"");
    out.push_back(e.get<double>());
  }
  return out;
}

double number_field(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number())
    throw BadInput(std::string("missing numeric field \"") + field + "\"");
  return j[field].get<double>();
}

}  // namespace

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Potential potential_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BadInput(std::string("potential JSON parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("form") || !j["form"].is_string())
    throw BadInput("potential JSON needs a string \"form\" field");
  const std::string form = j["form"].get<std::string>();
  if (form == "piecewise") {
    reject_unknown(j, {"form", "breakpoints", "values"});
    return Potential(PiecewiseConstant{number_array(j, "breakpoints"), number_array(j, "values")});
  }
  if (form == "grid") {
    reject_unknown(j, {"form", "x0", "dx", "samples"});
    return Potential(SampledGrid{number_field(j, "x0"), number_field(j, "dx"),
                                 number_array(j, "samples")});
  }
  if (form == "squarewell") {
    reject_unknown(j, {"form", "epsilon"});
    return Potential(SquareWell{number_field(j, "epsilon")});
  }
  throw BadInput("unknown potential form \"" + form + "\"");
}

Potential load_potential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open potential file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return potential_from_json_text(ss.str());
}

std::string potential_to_json_text(const Potential& v) {
  json j;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PiecewiseConstant>) {
          j["form"] = "piecewise";
          j["breakpoints"] = f.breakpoints;
          j["values"] = f.values;
        } else if constexpr (std::is_same_v<F, SampledGrid>) {
          j["form"] = "grid";
          j["x0"] = f.x0;
          j["dx"] = f.dx;
          j["samples"] = f.samples;
        } else {
          j["form"] = "squarewell";
          j["epsilon"] = f.depth;
        }
      },
      v.form());
  return j.dump();
}

void save_potential(const Potential& v, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write potential file " + path.string());
  out << potential_to_json_text(v) << "\n";
}

void write_scattering_csv(std::ostream& os, const ScatteringCoefficients& sc, char delimiter,
                          bool with_check) {
  const char d = delimiter;
  os << "k" << d << "reT" << d << "imT" << d << "reL" << d << "imL" << d << "reR" << d << "imR";
  if (with_check) os << d << "unitarity";
  os << "\n";
  for (std::size_t i = 0; i < sc.kgrid.size(); ++i) {
    os << format_full(sc.kgrid[i]) << d << format_full(sc.T[i].real()) << d
       << format_full(sc.T[i].imag()) << d << format_full(sc.L[i].real()) << d
       << format_full(sc.L[i].imag()) << d << format_full(sc.R[i].real()) << d
       << format_full(sc.R[i].imag());
    if (with_check)
      os << d << format_full(std::norm(sc.T[i]) + std::norm(sc.L[i]) - 1.0);
    os << "\n";
  }
}

void write_ratio_csv(std::ostream& os, std::span<const double> kgrid, std::span<const Complex> d,
                     char delimiter) {
  const char c = delimiter;
  os << "k" << c << "reD" << c << "imD" << "\n";
  for (std::size_t i = 0; i < kgrid.size(); ++i)
    os << format_full(kgrid[i]) << c << format_full(d[i].real()) << c << format_full(d[i].imag())
       << "\n";
}

ReflectionRatio load_sampled_ratio(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open ratio data file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw BadInput("empty ratio data file");
  std::vector<double> kg;
  std::vector<Complex> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double k, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &k, &re, &im) != 3)
      throw BadInput("malformed ratio CSV row: " + line);
    kg.push_back(k);
    vals.emplace_back(re, im);
  }
  return ReflectionRatio::sampled(std::move(kg), std::move(vals));
}

void write_identity_tsv(std::ostream& os, std::span<const IdentityReport> reports) {
  os << "n\tlhs\trhs\tresidual\n";
  for (const IdentityReport& r : reports)
    os << r.n << "\t" << format_full(r.lhs) << "\t" << format_full(r.rhs) << "\t"
       << format_full(r.residual) << "\n";
}

void write_ladder_tsv(std::ostream& os, std::span<const Candidate> candidates) {
  os << "N\tkappas\tC_N\n";
  for (const Candidate& c : candidates) {
    os << c.n << "\t";
    for (std::size_t j = 0; j < c.kappas.size(); ++j) {
      if (j) os << ";";
      os << format_full(c.kappas[j]);
    }
    os << "\t" << format_full(c.c_n) << "\n";
  }
}

std::string disambiguation_to_json(const Disambiguation& res) {
  json j;
  switch (res.status) {
    case Disambiguation::Status::Unique:
      j["status"] = "unique";
      break;
    case Disambiguation::Status::Ambiguous:
      j["status"] = "ambiguous";
      break;
    case Disambiguation::Status::NoneBelow:
      j["status"] = "none";
      break;
  }
  j["candidates"] = json::array();
  for (const Candidate& c : res.qualifying) {
    json jc;
    jc["N"] = c.n;
    jc["kappas"] = c.kappas;
    jc["gammas"] = c.gammas;
    jc["C_N"] = c.c_n;
    j["candidates"].push_back(jc);
  }
  return j.dump();
}

double parse_epsilon(const std::string& text) {
  if (text == "pi^2") return std::numbers::pi * std::numbers::pi;
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos != text.size()) throw BadInput("trailing characters in epsilon \"" + text + "\"");
    return value;
  } catch (const std::exception&) {
    throw BadInput("cannot parse epsilon \"" + text + "\"");
  }
}

ReflectionRatio parse_model_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw BadInput("model spec must be squarewell:EPSILON or potential:FILE.json");
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (head == "squarewell") return ReflectionRatio::square_well(parse_epsilon(rest));
  if (head == "potential") return ReflectionRatio::from_potential(load_potential(rest));
  throw BadInput("unknown model kind \"" + head + "\"");
}

}  // namespace scatter1d
