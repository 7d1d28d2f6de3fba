#include "xstates/json_io.hpp"

#include <cmath>
#include <string>

#include "xstates/error.hpp"

namespace xstates {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::InvalidArgument, "malformed JSON: " + what); }

int read_n(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) malformed("missing integer field 'n'");
  const int n = j["n"].get<int>();
  if (n < 1 || n > 15) malformed("'n' out of range");
  return n;
}

}  // namespace

json complex_to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar complex_from_json(const json& j) {
  if (j.is_number()) return Scalar(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) malformed("expected [re, im]");
  return Scalar(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const MatX& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const BlochState& b) {
  json components = json::object();
  for (const auto& [word, value] : b.components()) components[word.str()] = complex_to_json(value);
  return json{{"n", b.n()}, {"components", std::move(components)}};
}

json to_json(const DensityMatrix& d) { return json{{"n", d.n}, {"matrix", matrix_to_json(d.matrix)}}; }

json to_json(const XFiberPoint& p) { return to_json(fiber_embed(p)); }

json to_json(const SectionPoint2& s) {
  json lambda = json::array();
  for (const Scalar& l : s.lambda) lambda.push_back(complex_to_json(l));
  return json{{"x", complex_to_json(s.x)}, {"y", complex_to_json(s.y)}, {"lambda", std::move(lambda)}};
}

json to_json(const LocalRotation& g) {
  json blocks = json::array();
  for (const Mat3& b : g.blocks()) blocks.push_back(matrix_to_json(b));
  return blocks;
}

json to_json(const WeylElement& w) {
  json blocks = json::array();
  for (const Mat2& b : w.planar) blocks.push_back(matrix_to_json(b));
  return blocks;
}

json to_json(const Invariants2& p) {
  json values = json::array();
  for (const Scalar& z : p.p) values.push_back(complex_to_json(z));
  return json{{"p", std::move(values)}};
}

json to_json(const QuotientCoords& q) {
  const auto list = [](const std::vector<Scalar>& xs) {
    json out = json::array();
    for (const Scalar& z : xs) out.push_back(complex_to_json(z));
    return out;
  };
  return json{{"quotient",
               {{"t_tilde", list(q.t_tilde)},
                {"delta_tilde", list(q.delta_tilde)},
                {"s_tilde", list(q.s_tilde)},
                {"v_tilde", list(q.v_tilde)},
                {"eta_first", complex_to_json(q.eta_first)},
                {"eta_last", complex_to_json(q.eta_last)}}}};
}

BlochState bloch_from_json(const json& j) {
  const int n = read_n(j);
  if (!j.contains("components") || !j["components"].is_object()) malformed("missing object field 'components'");
  BlochState b(n);
  for (const auto& [key, value] : j["components"].items()) {
    PauliWord w(key);
    if (w.size() != n) malformed("word '" + key + "' has the wrong length");
    if (w.is_identity()) {
      if (complex_from_json(value) != Scalar(1.0)) malformed("identity component must be 1");
      continue;
    }
    b.set(w, complex_from_json(value));
  }
  return b;
}

DensityMatrix density_from_json(const json& j) {
  const int n = read_n(j);
  if (!j.contains("matrix") || !j["matrix"].is_array()) malformed("missing array field 'matrix'");
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  const json& rows = j["matrix"];
  if (static_cast<Eigen::Index>(rows.size()) != dim) malformed("matrix has the wrong number of rows");
  MatX m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) malformed("matrix row has the wrong length");
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return DensityMatrix(n, std::move(m));
}

BlochState state_from_json(const json& j) {
  if (j.is_object() && j.contains("matrix")) return to_bloch(density_from_json(j));
  return bloch_from_json(j);
}

}  // namespace xstates
