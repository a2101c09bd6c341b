#include "renorm/group_rep.hpp"

#include <sstream>

namespace renorm {

std::vector<int> central_involutions(const MultTable& t) {
  std::vector<int> out;
  for (int g = 0; g < t.order; ++g) {
    if (g == t.identity) continue;
    if (t.at(g, g) != t.identity) continue;
    bool central = true;
    for (int h = 0; h < t.order && central; ++h)
      central = t.at(g, h) == t.at(h, g);
    if (central) out.push_back(g);
  }
  return out;
}

CosetSplit coset_split(const MultTable& table, int j) {
  if (j < 0 || j >= table.order || j == table.identity ||
      table.at(j, j) != table.identity)
    throw argument_error("coset_split: j must be an involution");
  for (int h = 0; h < table.order; ++h)
    if (table.at(j, h) != table.at(h, j))
      throw argument_error("coset_split: j must be central");

  CosetSplit s;
  s.table = &table;
  s.j = j;
  s.sign.assign(table.order, 0);
  s.rep_of.assign(table.order, -1);
  s.rep_slot.assign(table.order, -1);

  // greedy scan: take g when jg has not been taken yet
  std::vector<char> taken(table.order, 0);
  for (int g = 0; g < table.order; ++g) {
    if (taken[g]) continue;
    int jg = table.at(j, g);
    s.rep_slot[g] = static_cast<int>(s.reps.size());
    s.reps.push_back(g);
    taken[g] = 1;
    taken[jg] = 1;
    s.sign[g] = 1;
    s.sign[jg] = -1;
    s.rep_of[g] = g;
    s.rep_of[jg] = g;
  }
  if (s.reps.empty() || s.reps[0] != table.identity)
    throw spec_error("coset_split: representatives must contain the identity");
  return s;
}

std::vector<Mat> classical_rep(const CosetSplit& split) {
  const MultTable& t = *split.table;
  int m = static_cast<int>(split.reps.size());
  std::vector<Mat> out;
  out.reserve(t.order);
  for (int g = 0; g < t.order; ++g) {
    int ginv = t.inverse[g];
    Mat T(m);
    for (int hs = 0; hs < m; ++hs) {
      int h = split.reps[hs];
      int gh = t.at(ginv, h);
      int col = split.rep_slot[split.rep_of[gh]];
      T.at(hs, col) = static_cast<double>(split.sign[gh]);
    }
    out.push_back(std::move(T));
  }
  return out;
}

std::vector<Mat> fini_rep(const MultTable& table, int extra_dim) {
  if (extra_dim < 0) throw argument_error("fini_rep: extra_dim >= 0");
  int m = table.order;
  int n = m + extra_dim;
  std::vector<Mat> out;
  out.reserve(2 * m);
  for (int eps_idx = 0; eps_idx < 2; ++eps_idx) {
    double eps = eps_idx == 0 ? 1.0 : -1.0;
    for (int g = 0; g < m; ++g) {
      Mat T(n);
      for (int h = 0; h < m; ++h) T.at(table.at(g, h), h) = eps;
      for (int i = 0; i < extra_dim; ++i) T.at(m + i, m + i) = eps;
      out.push_back(std::move(T));
    }
  }
  return out;
}

MultTable fini_rep_table(const MultTable& table) {
  MultTable two = preset_table("cyclic2");
  return direct_product(two, table);
}

}  // namespace renorm
