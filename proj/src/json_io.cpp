#include "siegel/json_io.hpp"

#include <fstream>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

template <class Matrix>
Matrix matrix_from_json(const Json& j, int g, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != g) {
    throw ContractViolation(std::string(name) + " must be a " + std::to_string(g) + "x" + std::to_string(g) + " array");
  }
  Matrix out(g, g);
  for (int r = 0; r < g; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != g) {
      throw ContractViolation(std::string(name) + " has a malformed row");
    }
    for (int c = 0; c < g; ++c) {
      if (!row[c].is_number()) throw ContractViolation(std::string(name) + " entries must be numbers");
      if constexpr (std::is_same_v<Matrix, IntMatrix>) {
        if (!row[c].is_number_integer()) throw ContractViolation(std::string(name) + " entries must be integers");
        out(r, c) = row[c].get<std::int64_t>();
      } else {
        out(r, c) = row[c].get<double>();
      }
    }
  }
  return out;
}

template <class Matrix>
Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

int degree_field(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j["g"].is_number_integer()) {
    throw ContractViolation("missing integer field g");
  }
  const int g = j["g"].get<int>();
  if (g < 1) throw DomainError("degree must be positive");
  return g;
}

}  // namespace

SiegelPoint point_from_json(const Json& j) {
  const int g = degree_field(j);
  if (!j.contains("X") || !j.contains("Y")) throw ContractViolation("point needs X and Y");
  return SiegelPoint(matrix_from_json<RealMatrix>(j["X"], g, "X"), matrix_from_json<RealMatrix>(j["Y"], g, "Y"));
}

Json to_json(const SiegelPoint& z) {
  return {{"g", z.degree()}, {"X", matrix_to_json(z.real_part())}, {"Y", matrix_to_json(z.imag_part())}};
}

SymplecticElement element_from_json(const Json& j) {
  const int g = degree_field(j);
  for (const char* key : {"A", "B", "C", "D"}) {
    if (!j.contains(key)) throw ContractViolation(std::string("element needs block ") + key);
  }
  return SymplecticElement(matrix_from_json<IntMatrix>(j["A"], g, "A"), matrix_from_json<IntMatrix>(j["B"], g, "B"),
                           matrix_from_json<IntMatrix>(j["C"], g, "C"), matrix_from_json<IntMatrix>(j["D"], g, "D"));
}

Json to_json(const SymplecticElement& gamma) {
  return {{"g", gamma.degree()},
          {"A", matrix_to_json(gamma.a())},
          {"B", matrix_to_json(gamma.b())},
          {"C", matrix_to_json(gamma.c())},
          {"D", matrix_to_json(gamma.d())}};
}

Json metric_to_json(const MetricPair& metric) {
  Json omega = Json::array();
  for (const auto& index : enumerate_omega(metric.degree())) omega.push_back({index.i, index.j});
  return {{"omega", omega}, {"W", matrix_to_json(metric.w())}, {"M", matrix_to_json(metric.m())}};
}

Json gamma_to_json(const ConnectionTable& table) {
  const auto omega = enumerate_omega(table.degree());
  const int n = table.size();
  Json entries = Json::array();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const cplx v = table(k, i, j);
        if (v == cplx{0.0, 0.0}) continue;
        entries.push_back({{"K", {omega[k].i, omega[k].j}},
                           {"I", {omega[i].i, omega[i].j}},
                           {"J", {omega[j].i, omega[j].j}},
                           {"re", v.real()},
                           {"im", v.imag()}});
      }
    }
  }
  return {{"g", table.degree()}, {"method", to_string(table.provenance())}, {"entries", entries}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ContractViolation("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace siegel
