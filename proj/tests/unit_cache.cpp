#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qlat/cache.hpp"
#include "qlat/equidist.hpp"

using namespace qlat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  REQUIRE(out.good());
}

struct TempDir {
  std::string dir;
  explicit TempDir(const std::string& name)
      : dir((fs::temp_directory_path() / name).string()) {
    fs::remove_all(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
};

} // namespace

TEST_CASE("class-set JSON round-trips byte-identically") {
  ClassSet cs = right_ideal_class_set(canonical_order(Int(11), Int(1)));
  std::string text = class_set_to_json(cs);
  CHECK(text.find("\"stamp\":\"qlat-cache-1\"") != std::string::npos);
  CHECK(text.find("\"delta\":\"11\"") != std::string::npos);
  CHECK(text.find('\n') == std::string::npos); // one line, deterministic

  ClassSet back = class_set_from_json(text);
  CHECK(class_set_to_json(back) == text);
  CHECK(back.classes.size() == cs.classes.size());
  CHECK(back.mass == cs.mass);
  CHECK(back.neighbor_prime == cs.neighbor_prime);
  CHECK(back.order.lat == cs.order.lat);
  CHECK(back.order.level == cs.order.level);
  CHECK(back.order.alg.a == cs.order.alg.a);
  CHECK(back.order.alg.b == cs.order.alg.b);
  CHECK(back.order.alg.ram == cs.order.alg.ram);
  for (size_t i = 0; i < cs.classes.size(); ++i) {
    CHECK(back.classes[i].ideal.lat == cs.classes[i].ideal.lat);
    CHECK(back.classes[i].ideal.nr == cs.classes[i].ideal.nr);
    CHECK(back.classes[i].canonical_gram == cs.classes[i].canonical_gram);
    CHECK(back.classes[i].key == cs.classes[i].key);
    CHECK(back.classes[i].unit_count == cs.classes[i].unit_count);
  }

  // A loaded set drives downstream computations exactly like a fresh one.
  WeightedMeasure a = mu_canonical(cs), b = mu_canonical(back);
  CHECK(a.support == b.support);
  CHECK(a.weights == b.weights);
}

TEST_CASE("cached class set: cold and warm loads agree byte for byte") {
  TempDir t("qlat-cache-unit-a");

  // Empty dir disables persistence but still computes.
  ClassSet direct = cached_class_set("", Int(11), Int(7));
  CHECK(direct.classes.size() == 8);

  ClassSet cold = cached_class_set(t.dir, Int(11), Int(7));
  CHECK(class_set_to_json(cold) == class_set_to_json(direct));
  const std::string path = cache_path(t.dir, Int(11), Int(7));
  CHECK(fs::exists(path));
  std::string bytes = slurp(path);
  CHECK(bytes == class_set_to_json(cold) + "\n");
  CHECK(!fs::exists(path + ".tmp")); // temp file was renamed away

  ClassSet warm = cached_class_set(t.dir, Int(11), Int(7));
  CHECK(class_set_to_json(warm) == class_set_to_json(cold));
  CHECK(slurp(path) == bytes); // untouched on a clean hit

  // Distinct keys live in distinct files.
  cached_class_set(t.dir, Int(2), Int(1));
  CHECK(fs::exists(cache_path(t.dir, Int(2), Int(1))));
  CHECK(slurp(path) == bytes);
}

TEST_CASE("corrupt, stale, or mismatched cache entries are rebuilt") {
  TempDir t("qlat-cache-unit-b");
  const std::string good = class_set_to_json(cached_class_set(t.dir, Int(11), Int(1)));
  const std::string path = cache_path(t.dir, Int(11), Int(1));

  spit(path, "not json at all");
  CHECK(class_set_to_json(cached_class_set(t.dir, Int(11), Int(1))) == good);
  CHECK(slurp(path) == good + "\n");

  // Old format stamp.
  std::string stale = good;
  size_t at = stale.find("qlat-cache-1");
  REQUIRE(at != std::string::npos);
  stale.replace(at, 12, "qlat-cache-0");
  spit(path, stale);
  CHECK(class_set_to_json(cached_class_set(t.dir, Int(11), Int(1))) == good);
  CHECK(slurp(path) == good + "\n");

  // Tampered weights break the mass identity and force a rebuild.
  ClassSet tampered = class_set_from_json(good);
  tampered.classes[0].unit_count = Int(1);
  spit(path, class_set_to_json(tampered));
  CHECK(class_set_to_json(cached_class_set(t.dir, Int(11), Int(1))) == good);
  CHECK(slurp(path) == good + "\n");

  // Content filed under the wrong key is ignored and replaced.
  const std::string wrong = cache_path(t.dir, Int(2), Int(1));
  spit(wrong, good + "\n");
  ClassSet two = cached_class_set(t.dir, Int(2), Int(1));
  CHECK(two.order.alg.delta == Int(2));
  CHECK(two.classes.size() == 1);
  CHECK(slurp(wrong) == class_set_to_json(two) + "\n");

  // The cache directory is created on demand.
  const std::string nested = t.dir + "/x/y";
  ClassSet n = cached_class_set(nested, Int(11), Int(1));
  CHECK(class_set_to_json(n) == good);
  CHECK(fs::exists(cache_path(nested, Int(11), Int(1))));
}

TEST_CASE("class-set JSON parse failures are input errors") {
  CHECK_THROWS_AS(class_set_from_json("{"), input_error);
  CHECK_THROWS_AS(class_set_from_json("{}"), input_error);
  CHECK_THROWS_AS(class_set_from_json("{\"stamp\":\"qlat-cache-1\"}"), input_error);

  std::string good = class_set_to_json(cached_class_set("", Int(2), Int(1)));
  std::string bad = good;
  size_t at = bad.find("\"delta\":\"2\"");
  REQUIRE(at != std::string::npos);
  bad.replace(at, 11, "\"delta\":\"2x\"");
  CHECK_THROWS_AS(class_set_from_json(bad), input_error);
}
