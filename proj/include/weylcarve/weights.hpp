#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weylcarve/exactnum.hpp"

namespace weylcarve::weights {

using exactnum::Int;

enum class GroupCase { Unitary, Siegel };

std::string to_string(GroupCase c);

// Torus character with multiplier exponent; no dominance requirement.
// Monomial weights in the exterior spaces are recorded as these.
struct TorusChar {
  std::vector<long> entries;
  long c = 0;

  std::string to_string() const;  // same "a1,...,ag;c" shape as Weight
  friend bool operator==(const TorusChar& a, const TorusChar& b) {
    return a.entries == b.entries && a.c == b.c;
  }
  friend bool operator<(const TorusChar& a, const TorusChar& b) {
    if (a.entries != b.entries) return a.entries < b.entries;
    return a.c < b.c;
  }
};

bool is_dominant(const TorusChar& t);

// Dominant weight with similitude component: entries a_1 >= ... >= a_g plus
// the multiplier exponent c. Unitary weights satisfy sum(a) = c mod 2.
struct Weight {
  GroupCase kind;
  std::vector<long> entries;
  long c = 0;

  static Weight unitary(std::vector<long> entries, long c);
  static Weight siegel(std::vector<long> entries, long c);

  int rank() const { return static_cast<int>(entries.size()); }
  std::string to_string() const;  // "a1,...,ag;c"

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.kind == b.kind && a.entries == b.entries && a.c == b.c;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.entries != b.entries) return a.entries < b.entries;
    return a.c < b.c;
  }
};

// Parses "a1,...,ag;c". Throws invalid_argument on malformed input or on
// dominance/parity violations.
Weight parse_weight(const std::string& text, GroupCase kind);

// The partner weight (-a_g, ..., -a_1; c). Unitary only.
Weight dual_weight(const Weight& a);

// All pairings <a + rho, beta^vee> over positive coroots, largest first.
std::vector<long> coroot_pairings(const Weight& a);

// True iff every pairing <a + rho, beta^vee> is <= p.
bool is_p_small(const Weight& a, const Int& p);

// True iff is_p_small holds and some pairing equals p exactly (the closed
// alcove boundary; recorded in reports so borderline runs are visible).
bool p_small_boundary(const Weight& a, const Int& p);

// Weyl dimension of the irreducible with highest weight a (unitary case:
// the general-linear factor; the multiplier acts by a scalar).
Int weyl_dim(const Weight& a);

// For an effective unitary weight: the partition (entries with zeros kept)
// and its size s = sum of entries = c. Throws not_effective when a_g < 0 or
// c != sum(a).
std::pair<std::vector<long>, long> partition_of(const Weight& a);

}  // namespace weylcarve::weights
