#include "cliquesdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cliquesdp/errors.hpp"

namespace cliquesdp {

void SparseSym::set(int i, int j, double v) {
  const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
  if (v == 0.0)
    entries.erase(key);
  else
    entries[key] = v;
}

double SparseSym::get(int i, int j) const {
  const auto it = entries.find({std::min(i, j), std::max(i, j)});
  return it == entries.end() ? 0.0 : it->second;
}

SymMatrix SparseSym::dense() const {
  SymMatrix m(n);
  for (const auto& [key, v] : entries) m.set(key.first, key.second, v);
  return m;
}

SparsityGraph aggregate_sparsity(const SdpProblem& p) {
  SparsityGraph g(p.n);
  for (const auto& a : p.A)
    for (const auto& [key, v] : a.entries)
      if (key.first != key.second && v != 0.0) g.add_edge(key.first, key.second);
  return g;
}

namespace {

// Strip comments and the punctuation the SDPA format allows in vector lines.
std::string clean_line(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (c == '*' || c == '"') break;
    if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')')
      s += ' ';
    else
      s += c;
  }
  return s;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

SdpProblem parse_sdpa(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  auto next_content_line = [&](std::string& out) -> bool {
    while (std::getline(in, raw)) {
      ++lineno;
      out = clean_line(raw);
      if (!blank(out)) return true;
    }
    return false;
  };

  std::string line;
  if (!next_content_line(line)) throw ParseError(lineno, "missing constraint count");
  int m = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> m) || m < 0) throw ParseError(lineno, "bad constraint count");
  }

  if (!next_content_line(line)) throw ParseError(lineno, "missing block count");
  int nblocks = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> nblocks) || nblocks < 1) throw ParseError(lineno, "bad block count");
  }

  if (!next_content_line(line)) throw ParseError(lineno, "missing block sizes");
  std::vector<int> block_size(nblocks);
  std::vector<bool> block_diag(nblocks);
  {
    std::istringstream ls(line);
    for (int k = 0; k < nblocks; ++k) {
      int s = 0;
      if (!(ls >> s) || s == 0) throw ParseError(lineno, "bad block size");
      block_diag[k] = s < 0;
      block_size[k] = std::abs(s);
    }
  }
  std::vector<int> offset(nblocks, 0);
  int n = 0;
  for (int k = 0; k < nblocks; ++k) {
    offset[k] = n;
    n += block_size[k];
  }

  SdpProblem p;
  p.n = n;
  p.m = m;
  p.A.assign(m + 1, SparseSym(n));
  p.b.assign(m, 0.0);
  {
    if (m > 0 && !next_content_line(line)) throw ParseError(lineno, "missing rhs line");
    if (m > 0) {
      std::istringstream ls(line);
      for (int k = 0; k < m; ++k)
        if (!(ls >> p.b[k])) throw ParseError(lineno, "bad rhs value");
    }
  }

  while (next_content_line(line)) {
    std::istringstream ls(line);
    int cons = 0, blk = 0, i = 0, j = 0;
    double v = 0.0;
    if (!(ls >> cons >> blk >> i >> j >> v)) throw ParseError(lineno, "malformed entry record");
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "trailing tokens in entry record");
    if (cons < 0 || cons > m) throw DimensionError("constraint index out of range");
    if (blk < 1 || blk > nblocks) throw DimensionError("block index out of range");
    if (i < 1 || j < 1 || i > block_size[blk - 1] || j > block_size[blk - 1])
      throw DimensionError("matrix index out of range");
    if (block_diag[blk - 1] && i != j) throw ParseError(lineno, "off-diagonal entry in diagonal block");
    p.A[cons].set(offset[blk - 1] + i - 1, offset[blk - 1] + j - 1, v);
  }
  return p;
}

std::string emit_sdpa(const SdpProblem& p) {
  std::ostringstream out;
  out << p.m << "\n1\n" << p.n << "\n";
  char buf[64];
  for (int k = 0; k < p.m; ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.b[k]);
    out << buf << (k + 1 == p.m ? "" : " ");
  }
  out << "\n";
  for (int cons = 0; cons <= p.m; ++cons) {
    for (const auto& [key, v] : p.A[cons].entries) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << cons << " 1 " << key.first + 1 << " " << key.second + 1 << " " << buf << "\n";
    }
  }
  return out.str();
}

SdpProblem builtin_example() {
  SdpProblem p;
  p.n = 4;
  p.m = 4;
  p.A.assign(5, SparseSym(4));
  p.b.assign(4, 1.0);

  const double a0[4][4] = {{1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (a0[i][j] != 0.0) p.A[0].set(i, j, a0[i][j]);
  for (int q = 1; q <= 4; ++q) p.A[q].set(q - 1, q - 1, 1.0);
  return p;
}

}  // namespace cliquesdp
