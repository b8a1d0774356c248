#include "maxmin/instance.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maxmin/errors.hpp"
#include "maxmin/rng.hpp"

namespace maxmin {

namespace {

using nlohmann::ordered_json;

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const ordered_json& arr, const char* field) {
  if (!arr.is_array()) throw ParseError(std::string("expected array for ") + field);
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ParseError(std::string("non-numeric entry in ") + field);
    v[static_cast<int>(i)] = arr[i].get<double>();
  }
  return v;
}

ordered_json piece_to_json(const AffinePiece& piece) {
  ordered_json arr = vector_to_json(piece.a);
  arr.push_back(piece.b);
  return arr;
}

AffinePiece piece_from_json(const ordered_json& arr, int dim, const char* field) {
  const Eigen::VectorXd packed = vector_from_json(arr, field);
  if (packed.size() != dim + 1)
    throw ParseError(std::string(field) + ": expected dim+1 numbers per plane");
  return {packed.head(dim), packed[dim]};
}

}  // namespace

Instance generate_instance(int dim, int k, std::uint64_t seed) {
  if (dim < 1 || k < 1) throw std::invalid_argument("instance needs dim >= 1 and k >= 1");
  SplitMix64 rng(SplitMix64::derive_stream(seed, "quadratic-instance"));

  Instance inst;
  inst.dim = dim;
  inst.box = Box::cube(dim, -10.0, 10.0);
  inst.seed = seed;
  inst.family = "random-quadratic";
  {
    std::ostringstream id;
    id << "rq-n" << dim << "-k" << k << "-s" << seed;
    inst.id = id.str();
  }

  for (int c = 0; c < k; ++c) {
    // Draw order per candidate: Q row-major, then b, then the constant.
    Eigen::MatrixXd q(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) q(i, j) = rng.next_in(-3.0, 3.0);
    Eigen::VectorXd b(dim);
    for (int i = 0; i < dim; ++i) b[i] = rng.next_in(0.0, 20.0);
    const double constant = rng.next_in(0.0, 20.0);
    inst.candidates.emplace_back(ConvexQuadratic(q.transpose() * q, b, constant));
  }
  return inst;
}

Instance generate_maximin_instance(const std::vector<Eigen::VectorXd>& points, NormKind p,
                                   const Box& box) {
  if (points.empty()) throw std::invalid_argument("maximin instance needs anchor points");
  const int n = box.dim();
  for (const Eigen::VectorXd& d : points)
    if (d.size() != n) throw std::invalid_argument("anchor point dimension mismatch");
  if (p == NormKind::kOne && n > 10)
    throw CapabilityError("1-norm encoding uses 2^dim pieces; capped at dimension 10");

  Instance inst;
  inst.dim = n;
  inst.box = box;
  inst.family = "maximin";
  inst.id = p == NormKind::kInf ? "maximin-inf" : "maximin-l1";

  for (const Eigen::VectorXd& d : points) {
    std::vector<AffinePiece> pieces;
    if (p == NormKind::kInf) {
      // ||x - d||_inf = max over coordinates of +-(x_i - d_i).
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[i] = 1.0;
        pieces.push_back({e, -d[i]});
        pieces.push_back({-e, d[i]});
      }
    } else {
      // ||x - d||_1 = max over sign patterns s of s . (x - d).
      const std::uint64_t combos = std::uint64_t{1} << n;
      for (std::uint64_t mask = 0; mask < combos; ++mask) {
        Eigen::VectorXd s(n);
        for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        pieces.push_back({s, -s.dot(d)});
      }
    }
    inst.candidates.emplace_back(PiecewiseLinearConvex(std::move(pieces)));
  }
  return inst;
}

std::string instance_to_json(const Instance& instance) {
  ordered_json j;
  j["schema_version"] = 1;
  j["id"] = instance.id;
  j["dim"] = instance.dim;
  ordered_json box = ordered_json::array();
  for (const auto& [lo, hi] : instance.box.bounds) box.push_back({lo, hi});
  j["box"] = box;

  ordered_json candidates = ordered_json::array();
  for (const CandidateFunction& c : instance.candidates) {
    ordered_json jc;
    if (c.is_piecewise_linear()) {
      jc["type"] = "pl";
      ordered_json pieces = ordered_json::array();
      for (const AffinePiece& piece : c.as_piecewise_linear().pieces())
        pieces.push_back(piece_to_json(piece));
      jc["pieces"] = pieces;
    } else {
      const ConvexQuadratic& q = c.as_quadratic();
      jc["type"] = "quadratic";
      ordered_json m = ordered_json::array();
      for (int r = 0; r < q.dim(); ++r)
        for (int col = 0; col < q.dim(); ++col) m.push_back(q.m()(r, col));
      jc["M"] = m;
      jc["b"] = vector_to_json(q.b());
      jc["c"] = q.c();
    }
    candidates.push_back(jc);
  }
  j["candidates"] = candidates;

  if (instance.initial_planes) {
    ordered_json planes = ordered_json::array();
    for (const AffinePiece& p : *instance.initial_planes) planes.push_back(piece_to_json(p));
    j["initial_planes"] = planes;
  }
  if (instance.seed || !instance.family.empty()) {
    ordered_json meta;
    if (instance.seed) meta["seed"] = *instance.seed;
    if (!instance.family.empty()) meta["family"] = instance.family;
    j["metadata"] = meta;
  }
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
      throw ParseError("unsupported or missing schema_version (expected 1)");

    Instance inst;
    inst.id = j.value("id", std::string{});
    if (!j.contains("dim")) throw ParseError("missing field: dim");
    inst.dim = j["dim"].get<int>();
    if (inst.dim < 1) throw ParseError("dim must be positive");

    if (!j.contains("box") || !j["box"].is_array() ||
        j["box"].size() != static_cast<std::size_t>(inst.dim))
      throw ParseError("box must list one [lo, hi] pair per dimension");
    std::vector<std::pair<double, double>> bounds;
    for (const auto& pair : j["box"]) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("box entry is not [lo, hi]");
      bounds.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    inst.box = Box(std::move(bounds));

    if (!j.contains("candidates") || !j["candidates"].is_array() || j["candidates"].empty())
      throw ParseError("candidates must be a nonempty array");
    for (const auto& jc : j["candidates"]) {
      const std::string type = jc.value("type", "");
      if (type == "pl") {
        if (!jc.contains("pieces")) throw ParseError("pl candidate missing pieces");
        std::vector<AffinePiece> pieces;
        for (const auto& piece : jc["pieces"])
          pieces.push_back(piece_from_json(piece, inst.dim, "pieces"));
        inst.candidates.emplace_back(PiecewiseLinearConvex(std::move(pieces)));
      } else if (type == "quadratic") {
        const Eigen::VectorXd m_flat = vector_from_json(jc.at("M"), "M");
        if (m_flat.size() != inst.dim * inst.dim)
          throw ParseError("M must hold dim*dim entries (row-major)");
        Eigen::MatrixXd m(inst.dim, inst.dim);
        for (int r = 0; r < inst.dim; ++r)
          for (int c = 0; c < inst.dim; ++c) m(r, c) = m_flat[r * inst.dim + c];
        const Eigen::VectorXd b = vector_from_json(jc.at("b"), "b");
        if (b.size() != inst.dim) throw ParseError("b must hold dim entries");
        if (!jc.contains("c") || !jc["c"].is_number())
          throw ParseError("quadratic candidate missing numeric c");
        inst.candidates.emplace_back(ConvexQuadratic(m, b, jc["c"].get<double>()));
      } else {
        throw ParseError("candidate type must be \"pl\" or \"quadratic\"");
      }
    }

    if (j.contains("initial_planes")) {
      std::vector<AffinePiece> planes;
      for (const auto& p : j["initial_planes"])
        planes.push_back(piece_from_json(p, inst.dim, "initial_planes"));
      if (planes.size() != inst.candidates.size())
        throw ParseError("initial_planes must list one plane per candidate");
      inst.initial_planes = std::move(planes);
    }
    if (j.contains("metadata")) {
      const auto& meta = j["metadata"];
      if (meta.contains("seed")) inst.seed = meta["seed"].get<std::uint64_t>();
      inst.family = meta.value("family", std::string{});
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed instance file: ") + e.what());
  }
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << instance_to_json(instance);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

}  // namespace maxmin
