#pragma once

#include <string>

#include "ideals.hpp"

namespace qlat {

// Canonical order behind a (delta, level) key: the level-`level` Eichler
// suborder of the fixed maximal order of the algebra ramified at the prime
// divisors of delta.
QuatOrder canonical_order(Int delta, Int level);

// Exact JSON round-trip for a class set.  All integers are serialized as
// decimal strings (they can exceed 64 bits), rationals as "p/q".  The text
// is deterministic: one line, keys sorted.
std::string class_set_to_json(const ClassSet& cs);
ClassSet class_set_from_json(const std::string& text);

// Class set of the canonical (delta, level) order, backed by a directory of
// JSON files keyed by (delta, level) plus a format stamp.  An empty dir
// disables persistence.  A missing, stale, or corrupt file is recomputed and
// atomically replaced (temp file + rename).  Loaded sets are verified against
// the canonical order and the mass identity before use.
ClassSet cached_class_set(const std::string& dir, Int delta, Int level);

// File that cached_class_set reads and writes for this key.
std::string cache_path(const std::string& dir, Int delta, Int level);

} // namespace qlat
