#include "weylcarve/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace weylcarve::weights {

using exactnum::make_rat;
using exactnum::Rat;

std::string to_string(GroupCase c) { return c == GroupCase::Unitary ? "unitary" : "siegel"; }

std::string TorusChar::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ",";
    os << entries[i];
  }
  os << ";" << c;
  return os.str();
}

bool is_dominant(const TorusChar& t) {
  for (size_t i = 1; i < t.entries.size(); ++i)
    if (t.entries[i - 1] < t.entries[i]) return false;
  return true;
}

static void validate(const Weight& w) {
  if (w.entries.empty()) fail(errc::invalid_argument, "weight needs at least one entry");
  for (size_t i = 1; i < w.entries.size(); ++i)
    if (w.entries[i - 1] < w.entries[i])
      fail(errc::invalid_argument, "weight entries must be non-increasing: " + w.to_string());
  if (w.kind == GroupCase::Unitary) {
    long sum = std::accumulate(w.entries.begin(), w.entries.end(), 0L);
    if (((sum - w.c) % 2 + 2) % 2 != 0)
      fail(errc::invalid_argument,
           "unitary weight needs sum(a) = c mod 2, got " + w.to_string());
  }
}

Weight Weight::unitary(std::vector<long> entries, long c) {
  Weight w{GroupCase::Unitary, std::move(entries), c};
  validate(w);
  return w;
}

Weight Weight::siegel(std::vector<long> entries, long c) {
  Weight w{GroupCase::Siegel, std::move(entries), c};
  validate(w);
  return w;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ",";
    os << entries[i];
  }
  os << ";" << c;
  return os.str();
}

Weight parse_weight(const std::string& text, GroupCase kind) {
  auto semi = text.find(';');
  if (semi == std::string::npos)
    fail(errc::invalid_argument, "weight must look like \"a1,...,ag;c\", got \"" + text + "\"");
  auto parse_long = [&](const std::string& tok) {
    size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      fail(errc::invalid_argument, "bad integer \"" + tok + "\" in weight \"" + text + "\"");
    }
    if (used != tok.size() || tok.empty())
      fail(errc::invalid_argument, "bad integer \"" + tok + "\" in weight \"" + text + "\"");
    return v;
  };
  std::vector<long> entries;
  std::string head = text.substr(0, semi);
  size_t pos = 0;
  while (true) {
    auto comma = head.find(',', pos);
    if (comma == std::string::npos) {
      entries.push_back(parse_long(head.substr(pos)));
      break;
    }
    entries.push_back(parse_long(head.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  long c = parse_long(text.substr(semi + 1));
  Weight w{kind, std::move(entries), c};
  validate(w);
  return w;
}

Weight dual_weight(const Weight& a) {
  if (a.kind != GroupCase::Unitary)
    fail(errc::wrong_case, "dual_weight applies to unitary weights only");
  std::vector<long> e(a.entries.rbegin(), a.entries.rend());
  for (auto& v : e) v = -v;
  return Weight::unitary(std::move(e), a.c);
}

std::vector<long> coroot_pairings(const Weight& a) {
  const int g = a.rank();
  std::vector<long> out;
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) out.push_back(a.entries[i] - a.entries[j] + (j - i));
  if (a.kind == GroupCase::Siegel) {
    for (int i = 0; i < g; ++i)
      for (int j = i + 1; j < g; ++j)
        out.push_back(a.entries[i] + a.entries[j] + 2 * g - i - j);  // 1-based: 2g+2-i-j
    for (int i = 0; i < g; ++i) out.push_back(a.entries[i] + g - i);  // 1-based: g+1-i
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool is_p_small(const Weight& a, const Int& p) {
  auto pr = coroot_pairings(a);
  return pr.empty() || Int(pr.front()) <= p;
}

bool p_small_boundary(const Weight& a, const Int& p) {
  auto pr = coroot_pairings(a);
  return !pr.empty() && Int(pr.front()) == p;
}

Int weyl_dim(const Weight& a) {
  if (a.kind != GroupCase::Unitary)
    fail(errc::wrong_case, "weyl_dim implemented for the unitary case only");
  const int g = a.rank();
  Rat dim(1);
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      dim *= make_rat(Int(a.entries[i] - a.entries[j] + (j - i)), Int(j - i));
  if (dim.get_den() != 1) fail(errc::oracle_mismatch, "weyl_dim: non-integral product");
  return dim.get_num();
}

std::pair<std::vector<long>, long> partition_of(const Weight& a) {
  if (a.kind != GroupCase::Unitary)
    fail(errc::wrong_case, "partition_of applies to unitary weights only");
  long sum = std::accumulate(a.entries.begin(), a.entries.end(), 0L);
  if (a.entries.back() < 0 || sum != a.c)
    fail(errc::not_effective,
         "weight " + a.to_string() + " is not effective (needs a_g >= 0 and c = sum of entries)");
  return {a.entries, a.c};
}

}  // namespace weylcarve::weights
