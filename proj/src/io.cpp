#include "kyp/io.hpp"

#include <fstream>
#include <sstream>

namespace kyp::io {

namespace {

// `path` is the dotted name used in messages, e.g. "B.rows".
Index read_dim(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw InputError("missing field '" + path + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError("field '" + path + "' must be a nonnegative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Json eigen_list(const CMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(m(i, i).real());
  return out;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["entries"] = std::move(entries);
  return out;
}

CMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) throw InputError("field '" + field + "' must be an object");
  const Index rows = read_dim(j, "rows", field + ".rows");
  const Index cols = read_dim(j, "cols", field + ".cols");
  if (!j.contains("entries") || !j.at("entries").is_array()) {
    throw InputError("field '" + field + ".entries' must be an array");
  }
  const Json& entries = j.at("entries");
  if (static_cast<Index>(entries.size()) != rows * cols) {
    throw InputError("field '" + field + ".entries' has " +
                     std::to_string(entries.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  }
  CMatrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& e = entries.at(static_cast<std::size_t>(k));
    Complex value;
    if (e.is_number()) {
      value = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      value = Complex(e[0].get<double>(), e[1].get<double>());
    } else {
      throw InputError("field '" + field + ".entries[" + std::to_string(k) +
                       "]' must be a [re, im] pair");
    }
    m(k / cols, k % cols) = value;
  }
  return m;
}

Json system_to_json(const SystemRealization& sys) {
  Json out;
  out["state_dim"] = sys.state_dim();
  out["input_dim"] = sys.input_dim();
  out["output_dim"] = sys.output_dim();
  out["A"] = matrix_to_json(sys.A());
  out["B"] = matrix_to_json(sys.B());
  out["C"] = matrix_to_json(sys.C());
  out["D"] = matrix_to_json(sys.D());
  return out;
}

SystemRealization system_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("system document must be an object");
  const Index n = read_dim(j, "state_dim", "state_dim");
  const Index m = read_dim(j, "input_dim", "input_dim");
  const Index p = read_dim(j, "output_dim", "output_dim");
  auto block = [&j](const char* name, Index rows, Index cols) {
    if (!j.contains(name)) {
      throw InputError(std::string("missing field '") + name + "'");
    }
    CMatrix b = matrix_from_json(j.at(name), name);
    if (b.rows() != rows) {
      throw InputError(std::string("field '") + name + ".rows' is " +
                       std::to_string(b.rows()) + ", expected " +
                       std::to_string(rows));
    }
    if (b.cols() != cols) {
      throw InputError(std::string("field '") + name + ".cols' is " +
                       std::to_string(b.cols()) + ", expected " +
                       std::to_string(cols));
    }
    return b;
  };
  return SystemRealization(block("A", n, n), block("B", n, m),
                           block("C", p, n), block("D", p, m));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

SystemRealization load_system(const std::string& path) {
  return system_from_json(read_json_file(path));
}

void save_system(const std::string& path, const SystemRealization& sys) {
  write_json_file(path, system_to_json(sys));
}

CMatrix load_candidate(const std::string& path, Index state_dim) {
  const Json j = read_json_file(path);
  const bool wrapped = j.is_object() && j.contains("X");
  const CMatrix x = matrix_from_json(wrapped ? j.at("X") : j, "X");
  if (x.rows() != state_dim || x.cols() != state_dim) {
    throw InputError("field 'X' must be " + std::to_string(state_dim) + "x" +
                     std::to_string(state_dim));
  }
  return x;
}

Json tolerances_to_json(const Tolerances& tol) {
  Json out;
  out["psd_tol"] = tol.psd_tol;
  out["rank_tol"] = tol.rank_tol;
  out["fixpoint_tol"] = tol.fixpoint_tol;
  out["max_iter"] = tol.max_iter;
  return out;
}

Json classification_to_json(const Classification& c) {
  Json out;
  out["norm"] = c.norm;
  out["passive"] = c.passive;
  out["isometric"] = c.isometric;
  out["coisometric"] = c.coisometric;
  out["conservative"] = c.conservative;
  out["controllable"] = c.controllable;
  out["observable"] = c.observable;
  out["simple"] = c.simple;
  out["minimal"] = c.minimal;
  out["controllable_dim"] = c.controllable_basis.cols();
  out["observable_dim"] = c.observable_basis.cols();
  return out;
}

Json shorted_defects_to_json(const ShortedDefects& d) {
  Json out;
  out["defect_H"] = matrix_to_json(d.defect_H);
  out["output_defect_H"] = matrix_to_json(d.output_defect_H);
  out["codefect_K"] = matrix_to_json(d.codefect_K);
  out["input_codefect_K"] = matrix_to_json(d.input_codefect_K);
  out["cross_check"] = d.cross_check;
  return out;
}

Json bounds_to_json(const SolutionBounds& b) {
  Json out;
  out["lower"] = matrix_to_json(b.lower);
  out["lower_diagonal"] = eigen_list(b.lower);
  out["observable"] = b.observable;
  if (b.interval_lower) {
    out["interval"] = {{"lower", matrix_to_json(*b.interval_lower)},
                       {"upper", "I"}};
  } else {
    out["interval"] = nullptr;
  }
  out["x_min"] = b.x_min ? matrix_to_json(*b.x_min) : Json(nullptr);
  return out;
}

Json uniqueness_to_json(const UniquenessReport& u) {
  Json out;
  out["UNIQQ"] = {{"met", u.uniqq}, {"range_form", u.uniqq_range}};
  out["UNIQ1"] = {{"met", u.uniq1}, {"range_form", u.uniq1_range}};
  out["nesopt"] = {{"met", u.nesopt}, {"range_form", u.nesopt_range}};
  out["sufficient_optimality"] = {{"met", u.sufficient_optimality},
                                  {"range_form", u.sufficient_range}};
  out["range_forms_agree"] = u.range_forms_agree;
  return out;
}

Json kyp_report_to_json(const KypReport& r) {
  Json out;
  out["X"] = matrix_to_json(r.X);
  out["in_interval"] = r.in_interval;
  out["kernel_trivial"] = r.kernel_trivial;
  Json forms;
  for (const FormResult& f : r.forms) {
    forms[f.name] = {{"defined", f.defined},
                     {"feasible", f.feasible},
                     {"margin", f.margin}};
  }
  out["forms"] = std::move(forms);
  Json riccati;
  for (const ResidualResult& q : r.riccati) {
    riccati[q.name] = {{"defined", q.defined}, {"residual", q.residual}};
  }
  out["riccati"] = std::move(riccati);
  out["feasible"] = r.feasible;
  out["consistent"] = r.consistent;
  out["max_residual"] = r.max_residual;
  return out;
}

Json trace_to_json(const IterationTrace& t) {
  Json out;
  out["iterations_used"] = t.iterations_used;
  out["converged"] = t.converged;
  out["slow_convergence"] = t.slow_convergence;
  out["empirical_rate"] = t.empirical_rate;
  out["limit_error_estimate"] = t.limit_error_estimate;
  out["final_residual"] = t.final_residual;
  out["first_gap"] = t.gaps.empty() ? 0.0 : t.gaps.front();
  out["last_gap"] = t.gaps.empty() ? 0.0 : t.gaps.back();
  return out;
}

}  // namespace kyp::io
