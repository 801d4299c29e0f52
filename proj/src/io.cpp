#include "centering/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "centering/errors.hpp"

namespace centering::io {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("expected an object with key \"") + key + "\"");
  }
  return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw SchemaError(std::string("\"") + key + "\" must be an array");
  return a;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex complex_value(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], "real part"), number(j[1], "imaginary part")};
  throw SchemaError("values must be numbers or [re, im] pairs");
}

std::vector<Complex> complex_array(const Json& a) {
  std::vector<Complex> out;
  out.reserve(a.size());
  for (const Json& v : a) out.push_back(complex_value(v));
  return out;
}

std::size_t index_value(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError("block entries must be nonnegative integers");
  }
  return j.get<std::size_t>();
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

FiniteProbSpace space_from_json(const Json& j) {
  std::vector<double> w;
  for (const Json& v : array_field(j, "weights")) w.push_back(number(v, "weight"));
  return FiniteProbSpace(std::move(w));
}

RandVar randvar_from_json(const Json& j) { return RandVar(complex_array(array_field(j, "values"))); }

Partition partition_from_json(const Json& j, std::size_t atoms) {
  std::vector<std::vector<std::size_t>> blocks;
  for (const Json& b : array_field(j, "blocks")) {
    if (!b.is_array()) throw SchemaError("each block must be an array");
    std::vector<std::size_t> block;
    for (const Json& i : b) block.push_back(index_value(i));
    blocks.push_back(std::move(block));
  }
  return Partition(std::move(blocks), atoms);
}

Matrix matrix_from_json(const Json& j) {
  const Json& rows = array_field(j, "rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw SchemaError("matrix needs at least one row");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& r = rows[static_cast<std::size_t>(i)];
    if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != n) {
      throw SchemaError("matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_value(r[static_cast<std::size_t>(k)]);
  }
  return m;
}

DiscreteDistribution distribution_from_json(const Json& j) {
  std::vector<Atom> atoms;
  for (const Json& a : array_field(j, "atoms")) {
    if (!a.is_array() || a.size() != 2) throw SchemaError("atoms are [value, mass] pairs");
    atoms.push_back({number(a[0], "atom value"), number(a[1], "atom mass")});
  }
  return DiscreteDistribution(std::move(atoms));
}

GridFunction grid_from_json(const Json& j) {
  const Json& cells = field(j, "cells");
  if (!cells.is_number_integer()) throw SchemaError("\"cells\" must be an integer");
  GridFunction f{cells.get<int>(), complex_array(array_field(j, "values"))};
  f.validate();
  return f;
}

std::vector<GridFunction> functions_from_json(const Json& j) {
  std::vector<GridFunction> out;
  if (j.is_object() && j.contains("functions")) {
    for (const Json& f : array_field(j, "functions")) out.push_back(grid_from_json(f));
  } else {
    out.push_back(grid_from_json(j));
  }
  return out;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  const double r = round12(x);
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

Json num(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  return Json::array({num(z.real()), num(z.imag())});
}

Json exponent_json(Exponent p) {
  if (p.is_infinite()) return "inf";
  return num(p.value());
}

Json to_json(const OptReport& r) {
  Json w = Json::array();
  for (Complex z : r.witness.values()) w.push_back(num(z));
  Json j;
  j["value"] = num(r.value);
  j["converged"] = r.converged;
  j["starts_used"] = r.starts_used;
  j["cross_check"] = r.cross_check ? num(*r.cross_check) : Json(nullptr);
  j["witness"] = std::move(w);
  return j;
}

Json to_json(const MixtureDecomposition& m) {
  Json comps = Json::array();
  for (const MixtureComponent& c : m.components) {
    comps.push_back({{"weight", num(c.weight)},
                     {"atoms", Json::array({Json::array({num(c.dist.value1), num(c.dist.mass1)}),
                                            Json::array({num(c.dist.value2), num(c.dist.mass2)})})}});
  }
  return {{"components", std::move(comps)}};
}

Json to_json(const GridFunction& f) {
  Json v = Json::array();
  for (Complex z : f.values) v.push_back(num(z));
  return {{"cells", f.cells}, {"values", std::move(v)}};
}

Json to_json(const ApproximationCertificate& c) {
  Json blocks = Json::array();
  for (const auto& b : c.partition.blocks()) blocks.push_back(b);
  Json errs = Json::array();
  for (double e : c.per_function_error) errs.push_back(num(e));
  return {{"blocks", std::move(blocks)},
          {"per_function_error", std::move(errs)},
          {"norm_bound", num(c.norm_bound)},
          {"epsilon", num(c.epsilon)}};
}

Json to_json(const GammaExperiment& g) {
  return {{"n", g.n},           {"dim", g.dim},       {"lhs_norm", num(g.lhs_norm)},
          {"lower", num(g.lower)}, {"nu", num(g.nu)}, {"slack", num(g.slack)},
          {"converged", g.converged}};
}

Json to_json(const EigenCheck& e) {
  Json ev = Json::array();
  for (Complex z : e.eigenvalues_tested) ev.push_back(num(z));
  Json sl = Json::array();
  for (double s : e.slacks) sl.push_back(num(s));
  return {{"eigenvalues_tested", std::move(ev)},
          {"slacks", std::move(sl)},
          {"min_slack", num(e.min_slack)},
          {"lhs_norm", num(e.lhs_norm)},
          {"sanctioned", e.sanctioned},
          {"note", e.note},
          {"converged", e.converged}};
}

std::string fmt12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out_ += f;
      continue;
    }
    out_ += '"';
    for (char c : f) {
      if (c == '"') out_ += '"';
      out_ += c;
    }
    out_ += '"';
  }
  out_ += "\r\n";
}

}  // namespace centering::io
