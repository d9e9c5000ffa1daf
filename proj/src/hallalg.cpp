#include "hall/hallalg.hpp"

#include <algorithm>

namespace hall {

CFElem cf_unit(const HallTable& t) {
  int z = t.zero_class();
  if (z < 0) throw InternalCheckError("table has no zero class");
  return CFElem::delta(z);
}

namespace {

void require_product_bound(const HallTable& t, const DimVec& a, const DimVec& b) {
  if (!t.in_bound(dim_add(a, b)))
    throw BoundError("product weight " + dim_to_string(dim_add(a, b)) +
                     " exceeds the table bound");
}

}  // namespace

CFElem cf_mult(const CFElem& f, const CFElem& g, const HallTable& t) {
  CFElem out;
  for (const auto& [x, fx] : f.coeffs())
    for (const auto& [y, gy] : g.coeffs()) {
      require_product_bound(t, t.classes[x].dims, t.classes[y].dims);
      BigRat fg = fx * gy;
      DimVec dz = dim_add(t.classes[x].dims, t.classes[y].dims);
      for (size_t z = 0; z < t.classes.size(); ++z) {
        if (t.classes[z].dims != dz) continue;
        auto it = t.hall.find({x, y, static_cast<int>(z)});
        if (it == t.hall.end()) continue;
        out.add(static_cast<int>(z), fg * BigRat(it->second.at_one()));
      }
    }
  return out;
}

CFElem cf_bracket(const CFElem& f, const CFElem& g, const HallTable& t) {
  return cf_mult(f, g, t) - cf_mult(g, f, t);
}

CFElem cf_direct_sum(const CFElem& f, const CFElem& g, const HallTable& t) {
  CFElem out;
  for (const auto& [x, fx] : f.coeffs())
    for (const auto& [y, gy] : g.coeffs()) {
      require_product_bound(t, t.classes[x].dims, t.classes[y].dims);
      BigRat fg = fx * gy;
      DimVec dz = dim_add(t.classes[x].dims, t.classes[y].dims);
      for (size_t z = 0; z < t.classes.size(); ++z) {
        if (t.classes[z].dims != dz) continue;
        auto it = t.split.find({x, y, static_cast<int>(z)});
        if (it == t.split.end()) continue;
        out.add(static_cast<int>(z), fg * BigRat(it->second.at_one()));
      }
    }
  return out;
}

CFElem cf_poset_product(const SPCert& cert, const std::vector<CFElem>& inputs,
                        const HallTable& t) {
  switch (cert.kind) {
    case SPCert::Kind::Leaf:
      return inputs.at(static_cast<size_t>(cert.leaf));
    case SPCert::Kind::Chain: {
      CFElem acc;
      bool first = true;
      for (const auto& ch : cert.children) {
        CFElem v = cf_poset_product(ch, inputs, t);
        acc = first ? v : cf_mult(acc, v, t);
        first = false;
      }
      if (first) return cf_unit(t);
      return acc;
    }
    case SPCert::Kind::Antichain: {
      CFElem acc;
      bool first = true;
      for (const auto& ch : cert.children) {
        CFElem v = cf_poset_product(ch, inputs, t);
        acc = first ? v : cf_direct_sum(acc, v, t);
        first = false;
      }
      if (first) return cf_unit(t);
      return acc;
    }
  }
  throw InternalCheckError("unreachable");
}

namespace {

// Ordered Krull-Schmidt sub-multiset splittings of a label.
std::vector<std::pair<Label, Label>> label_splittings(const Label& l) {
  std::vector<std::pair<DimVec, int>> parts;
  for (size_t i = 0; i < l.size();) {
    size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    parts.push_back({l[i], static_cast<int>(j - i)});
    i = j;
  }
  std::vector<std::pair<Label, Label>> out;
  std::vector<int> take(parts.size(), 0);
  while (true) {
    Label a, b;
    for (size_t k = 0; k < parts.size(); ++k) {
      for (int c = 0; c < take[k]; ++c) a.push_back(parts[k].first);
      for (int c = take[k]; c < parts[k].second; ++c) b.push_back(parts[k].first);
    }
    out.push_back({std::move(a), std::move(b)});
    size_t k = 0;
    while (k < parts.size() && ++take[k] > parts[k].second) {
      take[k] = 0;
      ++k;
    }
    if (k == parts.size()) break;
  }
  return out;
}

}  // namespace

CFTensor cf_comult(const CFElem& f, const HallTable& t) {
  CFTensor out;
  for (const auto& [z, fz] : f.coeffs()) {
    for (auto& [la, lb] : label_splittings(t.classes[z].label)) {
      int a = t.id_of(la), b = t.id_of(lb);
      if (a < 0 || b < 0) throw InternalCheckError("splitting class missing from table");
      auto key = std::make_pair(a, b);
      auto it = out.try_emplace(key, 0).first;
      it->second += fz;
      it->second.canonicalize();
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

BigRat cf_counit(const CFElem& f, const HallTable& t) { return f.at(t.zero_class()); }

CFTensor cf_tensor_mult(const CFTensor& a, const CFTensor& b, const HallTable& t) {
  CFTensor out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      CFElem left = cf_mult(CFElem::delta(ka.first), CFElem::delta(kb.first), t);
      CFElem right = cf_mult(CFElem::delta(ka.second), CFElem::delta(kb.second), t);
      BigRat scale = va * vb;
      for (const auto& [x, vx] : left.coeffs())
        for (const auto& [y, vy] : right.coeffs()) {
          auto it = out.try_emplace({x, y}, 0).first;
          it->second += scale * vx * vy;
          it->second.canonicalize();
          if (it->second == 0) out.erase(it);
        }
    }
  return out;
}

CFTensor3 cf_comult_then_left(const CFElem& f, const HallTable& t) {
  CFTensor3 out;
  for (const auto& [key, v] : cf_comult(f, t)) {
    for (auto& [la, lb] : label_splittings(t.classes[key.first].label)) {
      auto it = out.try_emplace({t.id_of(la), t.id_of(lb), key.second}, 0).first;
      it->second += v;
      it->second.canonicalize();
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

CFTensor3 cf_comult_then_right(const CFElem& f, const HallTable& t) {
  CFTensor3 out;
  for (const auto& [key, v] : cf_comult(f, t)) {
    for (auto& [la, lb] : label_splittings(t.classes[key.second].label)) {
      auto it = out.try_emplace({key.first, t.id_of(la), t.id_of(lb)}, 0).first;
      it->second += v;
      it->second.canonicalize();
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

bool cf_supported_on_indecomposables(const CFElem& f, const HallTable& t) {
  for (const auto& [cls, v] : f.coeffs()) {
    (void)v;
    if (t.classes[cls].label.size() != 1) return false;
  }
  return true;
}

FlagElem cf_flag_left(const CFElem& f, const FlagElem& r, const HallTable& t) {
  // (f *_L r)(pair c) = sum over down-table entries (mid, c') of
  // count(1) * f(mid) * r(c')
  FlagElem out;
  std::map<int, const FlagPairTable*> tables;
  for (const auto& [key, v] : r.coeffs()) {
    (void)v;
    if (!tables.count(key.first)) {
      const FlagPairTable* ft = t.flag_table(key.first);
      if (!ft) throw BoundError("no flag table for ambient class " + std::to_string(key.first));
      tables[key.first] = ft;
    }
  }
  for (const auto& [amb, ft] : tables) {
    for (size_t c = 0; c < ft->pair_key.size(); ++c) {
      BigRat acc = 0;
      for (const auto& [k, poly] : ft->down[c]) {
        BigRat rv = r.coeffs().count({amb, k.second}) ? r.coeffs().at({amb, k.second}) : BigRat(0);
        if (rv == 0) continue;
        acc += BigRat(poly.at_one()) * f.at(k.first) * rv;
      }
      acc.canonicalize();
      out.add({amb, static_cast<int>(c)}, acc);
    }
  }
  return out;
}

FlagElem cf_flag_right(const FlagElem& r, const CFElem& f, const HallTable& t) {
  FlagElem out;
  std::map<int, const FlagPairTable*> tables;
  for (const auto& [key, v] : r.coeffs()) {
    (void)v;
    if (!tables.count(key.first)) {
      const FlagPairTable* ft = t.flag_table(key.first);
      if (!ft) throw BoundError("no flag table for ambient class " + std::to_string(key.first));
      tables[key.first] = ft;
    }
  }
  for (const auto& [amb, ft] : tables) {
    for (size_t c = 0; c < ft->pair_key.size(); ++c) {
      BigRat acc = 0;
      for (const auto& [k, poly] : ft->up[c]) {
        BigRat rv = r.coeffs().count({amb, k.first}) ? r.coeffs().at({amb, k.first}) : BigRat(0);
        if (rv == 0) continue;
        acc += BigRat(poly.at_one()) * rv * f.at(k.second);
      }
      acc.canonicalize();
      out.add({amb, static_cast<int>(c)}, acc);
    }
  }
  return out;
}

namespace {

// exact rational Gaussian elimination
bool rat_invertible(std::vector<std::vector<BigRat>> m) {
  size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) return false;
    std::swap(m[sel], m[col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      BigRat f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        m[r][c].canonicalize();
      }
    }
  }
  return true;
}

}  // namespace

CheckResult cf_pbw_check(const HallTable& t, bool reversed_order) {
  CheckResult res;
  res.name = reversed_order ? "pbw-reversed-order" : "pbw-lex-order";
  std::map<DimVec, std::vector<int>> by_weight;
  for (size_t c = 0; c < t.classes.size(); ++c) by_weight[t.classes[c].dims].push_back(c);
  for (const auto& [w, cls] : by_weight) {
    size_t n = cls.size();
    std::vector<std::vector<BigRat>> matrix(n, std::vector<BigRat>(n, BigRat(0)));
    for (size_t r = 0; r < n; ++r) {
      Label mono = t.classes[cls[r]].label;  // ascending lexicographic
      if (reversed_order) std::reverse(mono.begin(), mono.end());
      CFElem prod = cf_unit(t);
      for (const auto& part : mono) {
        int id = t.id_of(Label{part});
        prod = cf_mult(prod, CFElem::delta(id), t);
      }
      for (size_t cc = 0; cc < n; ++cc) matrix[r][cc] = prod.at(cls[cc]);
    }
    if (!rat_invertible(matrix)) {
      res.pass = false;
      res.detail = "rank defect at weight " + dim_to_string(w);
      return res;
    }
  }
  res.pass = true;
  res.detail = "all weight-graded monomial matrices square and invertible";
  return res;
}

CheckResult cf_serre_pair(const HallTable& t, int i, int j) {
  CheckResult res;
  res.name = "serre(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  long a = t.form.cartan_a(i, j);
  long reps = 1 - a;
  DimVec ei(t.quiver.vertex_count(), 0), ej(t.quiver.vertex_count(), 0);
  ei[i] = 1;
  ej[j] = 1;
  int vi = t.id_of(Label{ei}), vj = t.id_of(Label{ej});
  if (vi < 0 || vj < 0) throw BoundError("simple classes missing from the table");
  CFElem u = CFElem::delta(vj);
  CFElem di = CFElem::delta(vi);
  for (long k = 0; k < reps; ++k) u = cf_bracket(di, u, t);
  res.pass = u.is_zero();
  if (!res.pass) {
    for (const auto& [cls, v] : u.coeffs())
      res.detail += " residue " + v.get_str() + " at class " +
                    label_to_string(t.classes[cls].label);
  } else {
    res.detail = "(ad d_i)^" + std::to_string(reps) + " d_j = 0";
  }
  return res;
}

}  // namespace hall
