#include "hall/quiver.hpp"

#include <atomic>
#include <queue>
#include <sstream>

namespace hall {

namespace {
std::atomic<uint64_t> next_quiver_uid{1};
}

std::string dim_to_string(const DimVec& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "]";
}

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows)
    : nv_(vertex_count), arrows_(std::move(arrows)), uid_(next_quiver_uid++) {
  if (nv_ <= 0) throw DomainError("quiver needs a positive vertex count");
  validate();
}

void Quiver::validate() const {
  std::vector<std::vector<int>> adj(nv_);
  std::vector<int> indeg(nv_, 0);
  for (const auto& a : arrows_) {
    if (a.source < 0 || a.source >= nv_ || a.target < 0 || a.target >= nv_)
      throw DomainError("arrow endpoint out of range");
    if (a.source == a.target) throw DomainError("self-loop arrow rejected");
    adj[a.source].push_back(a.target);
    indeg[a.target]++;
  }
  // Kahn topological sort: leftovers mean an oriented cycle.
  std::queue<int> q;
  for (int v = 0; v < nv_; ++v)
    if (indeg[v] == 0) q.push(v);
  int seen = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++seen;
    for (int w : adj[v])
      if (--indeg[w] == 0) q.push(w);
  }
  if (seen != nv_) throw DomainError("oriented cycle rejected");
}

Quiver Quiver::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int nv = -1;
  std::vector<Arrow> arrows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertices") {
      if (nv != -1) throw DomainError("duplicate vertices line");
      if (!(ls >> nv) || nv <= 0)
        throw DomainError("bad vertices line at line " + std::to_string(lineno));
    } else if (kw == "arrow") {
      if (nv == -1) throw DomainError("arrow before vertices line");
      int s, t;
      if (!(ls >> s >> t))
        throw DomainError("bad arrow line at line " + std::to_string(lineno));
      if (s < 1 || s > nv || t < 1 || t > nv)
        throw DomainError("arrow endpoint out of range at line " + std::to_string(lineno));
      arrows.push_back({s - 1, t - 1});
    } else {
      throw DomainError("unknown keyword '" + kw + "' at line " + std::to_string(lineno));
    }
    std::string extra;
    if (ls >> extra) throw DomainError("trailing tokens at line " + std::to_string(lineno));
  }
  if (nv == -1) throw DomainError("missing vertices line");
  return Quiver(nv, std::move(arrows));
}

std::string Quiver::serialize() const {
  std::string s = "vertices " + std::to_string(nv_) + "\n";
  for (const auto& a : arrows_)
    s += "arrow " + std::to_string(a.source + 1) + " " + std::to_string(a.target + 1) + "\n";
  return s;
}

EulerForm EulerForm::from_quiver(const Quiver& q) {
  int n = q.vertex_count();
  EulerForm f;
  f.mode_ = Mode::QuiverDerived;
  f.m_.assign(n, std::vector<BigRat>(n, BigRat(0)));
  for (int i = 0; i < n; ++i) f.m_[i][i] = 1;
  for (const auto& a : q.arrows()) f.m_[a.source][a.target] -= 1;
  return f;
}

EulerForm EulerForm::explicit_form(std::vector<std::vector<BigRat>> m) {
  EulerForm f;
  f.mode_ = Mode::Explicit;
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("form matrix must be square");
  f.m_ = std::move(m);
  return f;
}

BigRat EulerForm::apply(const DimVec& a, const DimVec& b) const {
  if (static_cast<int>(a.size()) != rank() || static_cast<int>(b.size()) != rank())
    throw DomainError("dimension vector does not match the form rank");
  BigRat s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) {
      if (b[j] == 0) continue;
      s += BigRat(a[i]) * m_[i][j] * BigRat(b[j]);
    }
  }
  s.canonicalize();
  return s;
}

BigRat EulerForm::antisym(const DimVec& a, const DimVec& b) const {
  BigRat s = apply(a, b) - apply(b, a);
  s.canonicalize();
  return s;
}

long EulerForm::apply_int(const DimVec& a, const DimVec& b) const {
  BigRat v = apply(a, b);
  if (v.get_den() != 1) throw DomainError("form value is not an integer");
  return static_cast<long>(v.get_num().get_si());
}

long EulerForm::cartan_a(int i, int j) const {
  if (i == j) throw DomainError("cartan_a needs distinct vertices");
  if (i < 0 || j < 0 || i >= rank() || j >= rank()) throw DomainError("vertex out of range");
  BigRat v = m_[i][j] + m_[j][i];
  if (v.get_den() != 1) throw DomainError("form value is not an integer");
  return static_cast<long>(v.get_num().get_si());
}

bool EulerForm::is_integral() const {
  for (const auto& row : m_)
    for (const auto& e : row)
      if (e.get_den() != 1) return false;
  return true;
}

EulerForm EulerForm::plus_symmetric(const std::vector<std::vector<long>>& s) const {
  // Adds the symmetrization of s, so the antisymmetrized form is unchanged.
  auto m = m_;
  int n = rank();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] += BigRat(s[i][j] + s[j][i]);
  EulerForm f;
  f.mode_ = Mode::Explicit;
  f.m_ = std::move(m);
  return f;
}

}  // namespace hall
