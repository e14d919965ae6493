#include "sirus/path.hpp"

#include <cassert>

namespace sirus {

bool pair_feasible(const Split& a, const Split& b) {
  if (a.j != b.j) return true;
  if (a.r == b.r) return false;  // same cut twice, or both sides of one cut
  const Split& lo = a.r < b.r ? a : b;
  const Split& hi = a.r < b.r ? b : a;
  // {x < lo} & {x >= hi} is empty; every other combination has room
  return !(lo.side == Side::L && hi.side == Side::R);
}

Path Path::single(const Split& a) {
  Path p;
  p.len = 1;
  p.s[0] = a;
  return p;
}

Path Path::duo(const Split& a, const Split& b) {
  assert(pair_feasible(a, b));
  Path p;
  p.len = 2;
  if (b < a) {
    p.s[0] = b;
    p.s[1] = a;
  } else {
    p.s[0] = a;
    p.s[1] = b;
  }
  return p;
}

std::string to_string(const Path& p) {
  std::string out;
  for (int i = 0; i < p.len; ++i) {
    if (i) out += " & ";
    out += "X" + std::to_string(p.s[i].j);
    out += p.s[i].side == Side::L ? " < q" : " >= q";
    out += std::to_string(p.s[i].r);
  }
  return out;
}

}  // namespace sirus
