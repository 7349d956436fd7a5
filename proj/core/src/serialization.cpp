#include "qmd/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qmd {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("", "invalid JSON");
  return j;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(path, "expected a 2-element [re, im] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix parse_matrix(const json& j, const std::string& path,
                           Index expect_rows = -1, Index expect_cols = -1) {
  if (!j.is_array() || j.empty())
    throw ParseError(path, "expected a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array())
    throw ParseError(path + "[0]", "expected an array (matrix row)");
  const Index cols = static_cast<Index>(j[0].size());
  if (expect_rows >= 0 && rows != expect_rows)
    throw ParseError(path, "expected " + std::to_string(expect_rows) +
                               " rows, got " + std::to_string(rows));
  if (expect_cols >= 0 && cols != expect_cols)
    throw ParseError(path + "[0]", "expected " + std::to_string(expect_cols) +
                                       " entries, got " + std::to_string(cols));
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!j[static_cast<std::size_t>(r)].is_array() ||
        static_cast<Index>(j[static_cast<std::size_t>(r)].size()) != cols)
      throw ParseError(rpath, "expected a row of " + std::to_string(cols) +
                                  " complex entries");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = parse_complex(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                              rpath + "[" + std::to_string(c) + "]");
  }
  return m;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QuantumChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "expected a channel object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("dim", "expected an integer");
  const Index n = j["dim"].get<Index>();
  if (n < 1) throw ParseError("dim", "must be >= 1");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError("kraus", "expected a nonempty array of matrices");
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < j["kraus"].size(); ++i)
    kraus.push_back(parse_matrix(j["kraus"][i], "kraus[" + std::to_string(i) + "]",
                                 n, n));
  return QuantumChannel(std::move(kraus));
}

OperatorAlgebra algebra_from_json(const json& j, double tol, std::uint64_t seed) {
  if (!j.is_object()) throw ParseError("", "expected an algebra object");
  if (j.contains("generators")) {
    const json& gens = j["generators"];
    if (!gens.is_array() || gens.empty())
      throw ParseError("generators", "expected a nonempty array of matrices");
    std::vector<ComplexMatrix> g;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      g.push_back(parse_matrix(gens[i], "generators[" + std::to_string(i) + "]"));
      if (g.back().rows() != g.back().cols())
        throw ParseError("generators[" + std::to_string(i) + "]",
                         "generator is not square");
      if (g.back().rows() != g[0].rows())
        throw ParseError("generators[" + std::to_string(i) + "]",
                         "generators have mixed sizes");
    }
    return generate_algebra(g[0].rows(), g, tol, seed);
  }
  if (j.contains("blocks")) {
    const json& jb = j["blocks"];
    if (!jb.is_array() || jb.empty())
      throw ParseError("blocks", "expected a nonempty array");
    std::vector<AlgebraBlock> blocks;
    Index support = 0;
    for (std::size_t i = 0; i < jb.size(); ++i) {
      const std::string bpath = "blocks[" + std::to_string(i) + "]";
      if (!jb[i].is_object() || !jb[i].contains("dimA") || !jb[i].contains("dimB"))
        throw ParseError(bpath, "expected {\"dimA\": ..., \"dimB\": ...}");
      blocks.push_back({jb[i]["dimA"].get<Index>(), jb[i]["dimB"].get<Index>()});
      if (blocks.back().dim_a < 1 || blocks.back().dim_b < 1)
        throw ParseError(bpath, "dims must be >= 1");
      support += blocks.back().dim_a * blocks.back().dim_b;
    }
    Index kernel = 0;
    if (j.contains("kernel_dim")) {
      if (!j["kernel_dim"].is_number_integer() || j["kernel_dim"].get<Index>() < 0)
        throw ParseError("kernel_dim", "expected a nonnegative integer");
      kernel = j["kernel_dim"].get<Index>();
    }
    const Index n = support + kernel;
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    if (j.contains("embedding") && !j["embedding"].is_null())
      u = parse_matrix(j["embedding"], "embedding", n, n);
    return algebra_from_blocks(blocks, kernel, u);
  }
  throw ParseError("", "algebra needs either \"generators\" or \"blocks\"");
}

SubsystemCode code_from_json(const json& j, double tol) {
  if (!j.is_object()) throw ParseError("", "expected a code object");
  if (j.contains("span")) {
    const json& sp = j["span"];
    if (!sp.is_array() || sp.empty())
      throw ParseError("span", "expected a nonempty array of vectors");
    std::vector<ComplexVector> vecs;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const std::string vpath = "span[" + std::to_string(i) + "]";
      if (!sp[i].is_array() || sp[i].empty())
        throw ParseError(vpath, "expected a nonempty vector");
      ComplexVector v(static_cast<Index>(sp[i].size()));
      for (std::size_t c = 0; c < sp[i].size(); ++c)
        v(static_cast<Index>(c)) =
            parse_complex(sp[i][c], vpath + "[" + std::to_string(c) + "]");
      vecs.push_back(std::move(v));
    }
    return SubsystemCode::from_span(vecs, tol);
  }
  if (!j.contains("dimA") || !j.contains("dimB") || !j.contains("embedding"))
    throw ParseError("", "code needs dimA, dimB and embedding (or span)");
  const Index da = j["dimA"].get<Index>();
  const Index db = j["dimB"].get<Index>();
  ComplexMatrix w = parse_matrix(j["embedding"], "embedding");
  if (w.cols() != da * db)
    throw ParseError("embedding", "expected dimA*dimB = " +
                                      std::to_string(da * db) + " columns, got " +
                                      std::to_string(w.cols()));
  return SubsystemCode(da, db, w, tol);
}

Representation representation_from_json(const json& j,
                                        const std::filesystem::path& base_dir,
                                        double tol, std::uint64_t seed) {
  if (!j.is_object()) throw ParseError("", "expected a representation object");
  if (!j.contains("domain"))
    throw ParseError("domain", "missing (algebra object or file path)");
  OperatorAlgebra domain;
  if (j["domain"].is_string()) {
    std::filesystem::path p = j["domain"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    domain = algebra_from_json(read_file(p), tol, seed);
  } else {
    domain = algebra_from_json(j["domain"], tol, seed);
  }

  if (j.contains("images")) {
    const json& ims = j["images"];
    if (!ims.is_array() ||
        static_cast<Index>(ims.size()) != domain.dim())
      throw ParseError("images", "expected " + std::to_string(domain.dim()) +
                                     " matrices (one per domain basis element)");
    std::vector<ComplexMatrix> images;
    for (std::size_t i = 0; i < ims.size(); ++i)
      images.push_back(parse_matrix(ims[i], "images[" + std::to_string(i) + "]"));
    return Representation(std::move(domain), std::move(images));
  }
  if (j.contains("kraus_conjugation")) {
    const json& ks = j["kraus_conjugation"];
    if (!ks.is_array() || ks.empty())
      throw ParseError("kraus_conjugation", "expected a nonempty array");
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < ks.size(); ++i)
      kraus.push_back(parse_matrix(ks[i],
                                   "kraus_conjugation[" + std::to_string(i) + "]",
                                   domain.ambient_dim(), domain.ambient_dim()));
    return representation_from_kraus(domain, kraus);
  }
  throw ParseError("", "representation needs \"images\" or \"kraus_conjugation\"");
}

}  // namespace

QuantumChannel channel_from_json_text(const std::string& text) {
  return channel_from_json(parse_text(text));
}

QuantumChannel load_channel(const std::filesystem::path& path) {
  return channel_from_json(read_file(path));
}

std::string channel_to_json_text(const QuantumChannel& ch) {
  json j;
  j["dim"] = ch.dim();
  json kraus = json::array();
  for (const auto& e : ch.kraus()) kraus.push_back(matrix_to_json(e));
  j["kraus"] = std::move(kraus);
  return j.dump(2);
}

void save_channel(const QuantumChannel& ch, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("", "cannot write " + path.string());
  out << channel_to_json_text(ch) << "\n";
}

OperatorAlgebra algebra_from_json_text(const std::string& text, double tol,
                                       std::uint64_t seed) {
  return algebra_from_json(parse_text(text), tol, seed);
}

OperatorAlgebra load_algebra(const std::filesystem::path& path, double tol,
                             std::uint64_t seed) {
  return algebra_from_json(read_file(path), tol, seed);
}

Representation representation_from_json_text(const std::string& text,
                                             const std::filesystem::path& base_dir,
                                             double tol, std::uint64_t seed) {
  return representation_from_json(parse_text(text), base_dir, tol, seed);
}

Representation load_representation(const std::filesystem::path& path, double tol,
                                   std::uint64_t seed) {
  return representation_from_json(read_file(path), path.parent_path(), tol, seed);
}

SubsystemCode code_from_json_text(const std::string& text, double tol) {
  return code_from_json(parse_text(text), tol);
}

SubsystemCode load_code(const std::filesystem::path& path, double tol) {
  return code_from_json(read_file(path), tol);
}

std::string code_to_json_text(const SubsystemCode& code) {
  json j;
  j["dimA"] = code.dim_a();
  j["dimB"] = code.dim_b();
  j["embedding"] = matrix_to_json(code.embedding());
  return j.dump(2);
}

std::string matrix_to_json_text(const ComplexMatrix& m) {
  return matrix_to_json(m).dump();
}

}  // namespace qmd
