#include "qlat/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlat/arith.hpp"
#include "qlat/errors.hpp"
#include "qlat/quatorder.hpp"

namespace qlat {
namespace {

using nlohmann::json;

constexpr const char* kStamp = "qlat-cache-1";

Int parse_int(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw input_error("cache: bad integer '" + s + "'");
  Int v(0);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw input_error("cache: bad integer '" + s + "'");
    v = v * Int(10) + Int(s[i] - '0');
  }
  return s[0] == '-' ? -v : v;
}

Rat parse_rat(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int den = parse_int(s.substr(slash + 1));
  if (den.is_zero()) throw input_error("cache: zero denominator '" + s + "'");
  return Rat(parse_int(s.substr(0, slash)), den);
}

std::string int_str(const Int& v) { return to_string(v); }
std::string rat_str(const Rat& r) { return to_string(r.num) + "/" + to_string(r.den); }

json mat_json(const MatI& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(int_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatI json_mat(const json& j) {
  if (!j.is_array() || j.empty() || !j.at(0).is_array() || j.at(0).empty())
    throw input_error("cache: bad matrix");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  MatI m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw input_error("cache: ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(i, c) = parse_int(row.at(static_cast<size_t>(c)).get<std::string>());
  }
  return m;
}

json ints_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_str(x));
  return a;
}

std::vector<Int> json_ints(const json& j) {
  if (!j.is_array()) throw input_error("cache: bad integer list");
  std::vector<Int> v;
  v.reserve(j.size());
  for (const json& x : j) v.push_back(parse_int(x.get<std::string>()));
  return v;
}

json lattice_json(const QuatLattice& L) {
  return json{{"num", mat_json(L.num)}, {"den", int_str(L.den)}};
}

QuatLattice json_lattice(const json& j) {
  QuatLattice L;
  L.num = json_mat(j.at("num"));
  L.den = parse_int(j.at("den").get<std::string>());
  if (L.den < Int(1)) throw input_error("cache: lattice denominator must be positive");
  return L;
}

} // namespace

QuatOrder canonical_order(Int delta, Int level) {
  QuatAlgebra B = build_algebra(prime_divisors(delta));
  return eichler_order(maximal_order(B), level);
}

std::string class_set_to_json(const ClassSet& cs) {
  json j;
  j["stamp"] = kStamp;
  j["delta"] = int_str(cs.order.alg.delta);
  j["level"] = int_str(cs.order.level);
  j["algebra"] = json{{"a", int_str(cs.order.alg.a)},
                      {"b", int_str(cs.order.alg.b)},
                      {"ram", ints_json(cs.order.alg.ram)}};
  j["order"] = lattice_json(cs.order.lat);
  j["mass"] = rat_str(cs.mass);
  j["neighbor_prime"] = int_str(cs.neighbor_prime);
  json classes = json::array();
  for (const IdealClass& c : cs.classes) {
    json e;
    e["ideal"] = lattice_json(c.ideal.lat);
    e["nr"] = int_str(c.ideal.nr);
    e["gram"] = mat_json(c.canonical_gram);
    e["key"] = ints_json(c.key);
    e["unit"] = int_str(c.unit_count);
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  return j.dump();
}

ClassSet class_set_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("cache: unparsable class-set JSON");
  try {
    if (j.at("stamp").get<std::string>() != kStamp)
      throw input_error("cache: format stamp mismatch");
    ClassSet cs;
    Int delta = parse_int(j.at("delta").get<std::string>());
    const json& alg = j.at("algebra");
    cs.order.alg.a = parse_int(alg.at("a").get<std::string>());
    cs.order.alg.b = parse_int(alg.at("b").get<std::string>());
    cs.order.alg.ram = json_ints(alg.at("ram"));
    cs.order.alg.delta = delta;
    cs.order.lat = json_lattice(j.at("order"));
    cs.order.level = parse_int(j.at("level").get<std::string>());
    cs.mass = parse_rat(j.at("mass").get<std::string>());
    cs.neighbor_prime = parse_int(j.at("neighbor_prime").get<std::string>());
    for (const json& e : j.at("classes")) {
      IdealClass c;
      c.ideal.lat = json_lattice(e.at("ideal"));
      c.ideal.nr = parse_int(e.at("nr").get<std::string>());
      c.canonical_gram = json_mat(e.at("gram"));
      c.key = json_ints(e.at("key"));
      c.unit_count = parse_int(e.at("unit").get<std::string>());
      cs.classes.push_back(std::move(c));
    }
    if (cs.classes.empty()) throw input_error("cache: empty class list");
    return cs;
  } catch (const json::exception&) {
    throw input_error("cache: malformed class-set JSON");
  }
}

std::string cache_path(const std::string& dir, Int delta, Int level) {
  return dir + "/classset-" + to_string(delta) + "-" + to_string(level) + ".json";
}

ClassSet cached_class_set(const std::string& dir, Int delta, Int level) {
  QuatOrder O = canonical_order(delta, level);
  if (dir.empty()) return right_ideal_class_set(O);

  const std::string path = cache_path(dir, delta, level);
  {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      try {
        ClassSet cs = class_set_from_json(buf.str());
        Rat total(0);
        for (const IdealClass& c : cs.classes) total = total + Rat(Int(1), c.unit_count);
        bool ok = cs.order.alg.a == O.alg.a && cs.order.alg.b == O.alg.b &&
                  cs.order.alg.ram == O.alg.ram && cs.order.alg.delta == O.alg.delta &&
                  cs.order.lat == O.lat && cs.order.level == O.level && total == cs.mass;
        if (ok) return cs;
      } catch (const input_error&) {
        // fall through and rebuild the entry
      }
    }
  }

  ClassSet cs = right_ideal_class_set(O);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw input_error("cache: cannot create directory " + dir);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << class_set_to_json(cs) << '\n';
    if (!out.good()) throw input_error("cache: cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw input_error("cache: cannot move " + tmp + " into place");
  return cs;
}

} // namespace qlat
