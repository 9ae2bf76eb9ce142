#include "curvlab/tensor_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvlab/json_writer.hpp"

namespace curvlab {

std::string tensor_to_json(const CurvatureTensor& r) {
  JsonWriter w;
  w.begin_object();
  w.key("format");
  w.value(kTensorFormat);
  w.key("dim");
  w.value(r.n());
  w.key("lambda2_matrix");
  w.begin_array();
  const SymMatrix& m = r.lambda2_matrix();
  for (int a = 0; a < m.dim(); ++a) {
    w.begin_array();
    for (int b = 0; b < m.dim(); ++b) w.value(m(a, b));
    w.end_array();
  }
  w.end_array();
  w.end_object();
  std::string out = w.take();
  out += '\n';
  return out;
}

void write_tensor_file(const std::string& path, const CurvatureTensor& r) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << tensor_to_json(r);
  if (!f) throw IoError("write failed for '" + path + "'");
}

namespace {

CurvatureTensor finish_load(CurvatureTensor raw, const LoadOptions& options) {
  const SymmetryReport rep = validate(raw);
  if (rep.bianchi_violation <= options.tol * rep.scale) {
    return raw;
  }
  if (options.project) {
    return bianchi_project(raw);
  }
  throw IoError(
      "tensor violates the first Bianchi identity (max violation " +
      std::to_string(rep.bianchi_violation) +
      "); re-run with projection enabled to repair it");
}

CurvatureTensor from_matrix(int n, const nlohmann::json& rows,
                            const LoadOptions& options) {
  const Dimension dim(n);
  const int n2 = dim.lambda2();
  if (!rows.is_array() || static_cast<int>(rows.size()) != n2) {
    throw IoError("lambda2_matrix must be a " + std::to_string(n2) + " x " +
                  std::to_string(n2) + " array for dim " + std::to_string(n));
  }
  DenseMatrix raw(n2, n2);
  for (int a = 0; a < n2; ++a) {
    const auto& row = rows[a];
    if (!row.is_array() || static_cast<int>(row.size()) != n2) {
      throw IoError("lambda2_matrix row " + std::to_string(a) +
                    " has the wrong length");
    }
    for (int b = 0; b < n2; ++b) {
      if (!row[b].is_number()) {
        throw IoError("lambda2_matrix entries must be numbers");
      }
      const double v = row[b].get<double>();
      if (!std::isfinite(v)) throw IoError("non-finite matrix entry");
      raw.at(a, b) = v;
    }
  }
  double max_abs = 0.0;
  for (double v : raw.data()) max_abs = std::max(max_abs, std::abs(v));
  double asym = 0.0;
  for (int a = 0; a < n2; ++a) {
    for (int b = a + 1; b < n2; ++b) {
      asym = std::max(asym, std::abs(raw.at(a, b) - raw.at(b, a)));
    }
  }
  if (asym > options.tol * (1.0 + max_abs)) {
    throw IoError("lambda2_matrix is not symmetric (max asymmetry " +
                  std::to_string(asym) + ")");
  }
  SymMatrix m(n2);
  for (int a = 0; a < n2; ++a) {
    for (int b = a; b < n2; ++b) {
      m.set(a, b, 0.5 * (raw.at(a, b) + raw.at(b, a)));
    }
  }
  return finish_load(CurvatureTensor(dim, std::move(m)), options);
}

CurvatureTensor from_components(int n, const nlohmann::json& list,
                                const LoadOptions& options) {
  const Dimension dim(n);
  const int n2 = dim.lambda2();
  SymMatrix m(n2);
  std::vector<bool> seen(static_cast<std::size_t>(n2) * n2, false);
  for (const auto& item : list) {
    if (!item.is_array() || item.size() != 5) {
      throw IoError("components entries must be [i, j, k, l, value]");
    }
    int idx[4];
    for (int t = 0; t < 4; ++t) {
      if (!item[t].is_number_integer()) {
        throw IoError("component indices must be integers");
      }
      idx[t] = item[t].get<int>();
      if (idx[t] < 1 || idx[t] > n) {
        throw IoError("component index out of range 1.." + std::to_string(n));
      }
    }
    if (!item[4].is_number()) throw IoError("component value must be a number");
    double v = item[4].get<double>();
    if (!std::isfinite(v)) throw IoError("non-finite component value");
    int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
    if (i == j || k == l) {
      throw IoError("component with i == j or k == l is identically zero");
    }
    if (i > j) {
      std::swap(i, j);
      v = -v;
    }
    if (k > l) {
      std::swap(k, l);
      v = -v;
    }
    int a = pair_flat(n, i, j);
    int b = pair_flat(n, k, l);
    if (a > b) std::swap(a, b);
    const std::size_t slot = static_cast<std::size_t>(a) * n2 + b;
    if (seen[slot] && m(a, b) != v) {
      throw IoError("conflicting duplicate for component (" +
                    std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + "," + std::to_string(l) + ")");
    }
    seen[slot] = true;
    m.set(a, b, v);
  }
  return finish_load(CurvatureTensor(dim, std::move(m)), options);
}

}  // namespace

CurvatureTensor tensor_from_json(const std::string& text,
                                 const LoadOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IoError("tensor file must hold a JSON object");
  if (doc.contains("format") && doc["format"] != kTensorFormat) {
    throw IoError("unsupported format '" +
                  doc["format"].dump() + "', expected " + kTensorFormat);
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw IoError("missing integer field 'dim'");
  }
  const int n = doc["dim"].get<int>();
  if (n < 1) throw IoError("dim must be >= 1");
  if (doc.contains("lambda2_matrix")) {
    return from_matrix(n, doc["lambda2_matrix"], options);
  }
  if (doc.contains("components")) {
    if (!doc["components"].is_array()) {
      throw IoError("components must be an array");
    }
    return from_components(n, doc["components"], options);
  }
  throw IoError("tensor file needs either lambda2_matrix or components");
}

CurvatureTensor read_tensor_file(const std::string& path,
                                 const LoadOptions& options) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return tensor_from_json(buf.str(), options);
}

}  // namespace curvlab
