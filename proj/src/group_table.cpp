#include "renorm/group_table.hpp"

#include <algorithm>
#include <map>

namespace renorm {

void MultTable::validate() const {
  if (order <= 0 || static_cast<int>(table.size()) != order * order)
    throw spec_error("multiplication table has wrong size");
  for (int v : table)
    if (v < 0 || v >= order) throw spec_error("table entry out of range");
  for (int i = 0; i < order; ++i)
    if (at(identity, i) != i || at(i, identity) != i)
      throw spec_error("identity axiom fails");
  if (static_cast<int>(inverse.size()) != order)
    throw spec_error("inverse map has wrong size");
  for (int i = 0; i < order; ++i)
    if (at(i, inverse[i]) != identity || at(inverse[i], i) != identity)
      throw spec_error("inverse axiom fails");
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      for (int k = 0; k < order; ++k)
        if (at(at(i, j), k) != at(i, at(j, k)))
          throw spec_error("associativity fails");
}

MultTable make_table(int order, std::vector<int> entries) {
  MultTable t;
  t.order = order;
  t.table = std::move(entries);
  if (static_cast<int>(t.table.size()) != order * order)
    throw spec_error("multiplication table has wrong size");
  t.identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int i = 0; i < order && ok; ++i)
      ok = t.at(e, i) == i && t.at(i, e) == i;
    if (ok) {
      t.identity = e;
      break;
    }
  }
  if (t.identity < 0) throw spec_error("table has no identity element");
  t.inverse.assign(order, -1);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      if (t.at(i, j) == t.identity && t.at(j, i) == t.identity) t.inverse[i] = j;
  t.validate();
  return t;
}

namespace {

MultTable cyclic_table(int n) {
  std::vector<int> e(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[static_cast<size_t>(i) * n + j] = (i + j) % n;
  return make_table(n, std::move(e));
}

MultTable dihedral_table(int n) {
  // elements 0..n-1 rotations, n..2n-1 reflections
  int m = 2 * n;
  std::vector<int> e(static_cast<size_t>(m) * m);
  auto idx = [&](int i, int j) -> int& { return e[static_cast<size_t>(i) * m + j]; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool ri = i >= n, rj = j >= n;
      int a = ri ? i - n : i, b = rj ? j - n : j;
      if (!ri && !rj) idx(i, j) = (a + b) % n;
      else if (!ri && rj) idx(i, j) = n + (b + a) % n;
      else if (ri && !rj) idx(i, j) = n + (a - b + n) % n;
      else idx(i, j) = (a - b + n) % n;
    }
  return make_table(m, std::move(e));
}

MultTable quaternion_table() {
  // 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k
  auto mul = [](int x, int y) {
    auto sign = [](int v) { return v & 1 ? -1 : 1; };
    auto unit = [](int v) { return v >> 1; };  // 0:1 1:i 2:j 3:k
    static const int utab[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int stab[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    int u = utab[unit(x)][unit(y)];
    int s = sign(x) * sign(y) * stab[unit(x)][unit(y)];
    return (u << 1) | (s < 0 ? 1 : 0);
  };
  std::vector<int> e(64);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) e[static_cast<size_t>(i) * 8 + j] = mul(i, j);
  return make_table(8, std::move(e));
}

}  // namespace

MultTable direct_product(const MultTable& a, const MultTable& b) {
  int m = a.order * b.order;
  std::vector<int> e(static_cast<size_t>(m) * m);
  auto enc = [&](int i, int j) { return i * b.order + j; };
  for (int i1 = 0; i1 < a.order; ++i1)
    for (int j1 = 0; j1 < b.order; ++j1)
      for (int i2 = 0; i2 < a.order; ++i2)
        for (int j2 = 0; j2 < b.order; ++j2)
          e[static_cast<size_t>(enc(i1, j1)) * m + enc(i2, j2)] =
              enc(a.at(i1, i2), b.at(j1, j2));
  return make_table(m, std::move(e));
}

MultTable preset_table(const std::string& name) {
  if (name.rfind("cyclic", 0) == 0) {
    int n = std::stoi(name.substr(6));
    if (n < 1) throw argument_error("cyclic group needs n >= 1");
    return cyclic_table(n);
  }
  if (name == "klein4") return direct_product(cyclic_table(2), cyclic_table(2));
  if (name.rfind("dihedral", 0) == 0) {
    int n = std::stoi(name.substr(8));
    if (n < 2) throw argument_error("dihedral group needs n >= 2");
    return dihedral_table(n);
  }
  if (name == "quaternion8") return quaternion_table();
  if (name == "z2xz4") return direct_product(cyclic_table(2), cyclic_table(4));
  throw argument_error("unknown group preset: " + name);
}

std::vector<int> element_orders(const MultTable& t) {
  std::vector<int> orders(t.order);
  for (int i = 0; i < t.order; ++i) {
    int x = i, k = 1;
    while (x != t.identity) {
      x = t.at(x, i);
      ++k;
    }
    orders[i] = k;
  }
  return orders;
}

namespace {

bool extend_isomorphism(const MultTable& a, const MultTable& b,
                        std::vector<int>& map, std::vector<bool>& used,
                        const std::vector<int>& ord_a,
                        const std::vector<int>& ord_b, int next) {
  if (next == a.order) return true;
  if (map[next] >= 0) return extend_isomorphism(a, b, map, used, ord_a, ord_b, next + 1);
  for (int img = 0; img < b.order; ++img) {
    if (used[img] || ord_a[next] != ord_b[img]) continue;
    map[next] = img;
    used[img] = true;
    // consistency against everything mapped so far
    bool ok = true;
    for (int j = 0; j < a.order && ok; ++j) {
      if (map[j] < 0) continue;
      int p1 = a.at(next, j), p2 = a.at(j, next);
      if (map[p1] >= 0 && map[p1] != b.at(img, map[j])) ok = false;
      if (ok && map[p2] >= 0 && map[p2] != b.at(map[j], img)) ok = false;
    }
    if (ok && extend_isomorphism(a, b, map, used, ord_a, ord_b, next + 1))
      return true;
    map[next] = -1;
    used[img] = false;
  }
  return false;
}

}  // namespace

bool tables_isomorphic(const MultTable& a, const MultTable& b) {
  if (a.order != b.order) return false;
  if (a.order > 64) throw argument_error("tables_isomorphic: order > 64");
  std::vector<int> ord_a = element_orders(a), ord_b = element_orders(b);
  {
    std::vector<int> pa = ord_a, pb = ord_b;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) return false;
  }
  std::vector<int> map(a.order, -1);
  std::vector<bool> used(b.order, false);
  map[a.identity] = b.identity;
  used[b.identity] = true;
  return extend_isomorphism(a, b, map, used, ord_a, ord_b, 0);
}

}  // namespace renorm
