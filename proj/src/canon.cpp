//
// Copyright 2026 The obdax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "canon.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace obdax {

namespace {

struct Structure {
  std::vector<Name> names;
  std::vector<std::vector<int>> facts;  // relation id followed by argument ids
  std::vector<std::vector<std::size_t>> occurs;  // per constant: fact indices
};

// Refines `colors` to the coarsest stable partition; new colours are ranks of
// isomorphism-invariant signatures.
void refine(const Structure& s, std::vector<int>& colors) {
  std::size_t classes = std::set<int>(colors.begin(), colors.end()).size();
  while (true) {
    std::vector<std::pair<std::vector<int>, std::size_t>> sig;
    for (std::size_t v = 0; v < colors.size(); ++v) {
      std::vector<std::vector<int>> around;
      for (std::size_t fi : s.occurs[v]) {
        const auto& f = s.facts[fi];
        std::vector<int> e{f[0]};
        for (std::size_t k = 1; k < f.size(); ++k) {
          e.push_back(f[k] == static_cast<int>(v) ? -1 : colors[static_cast<std::size_t>(f[k])]);
        }
        around.push_back(std::move(e));
      }
      std::sort(around.begin(), around.end());
      std::vector<int> flat{colors[v]};
      for (const auto& e : around) {
        flat.push_back(-2);
        flat.insert(flat.end(), e.begin(), e.end());
      }
      sig.emplace_back(std::move(flat), v);
    }
    std::sort(sig.begin(), sig.end());
    std::vector<int> next(colors.size());
    int c = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (i > 0 && sig[i].first != sig[i - 1].first) ++c;
      next[sig[i].second] = c;
    }
    colors = std::move(next);
    const std::size_t now = static_cast<std::size_t>(c) + (sig.empty() ? 0 : 1);
    if (now == classes) return;
    classes = now;
  }
}

std::string encode(const Structure& s, const std::vector<int>& colors) {
  std::vector<std::vector<int>> fs;
  for (const auto& f : s.facts) {
    std::vector<int> g{f[0]};
    for (std::size_t k = 1; k < f.size(); ++k) g.push_back(colors[static_cast<std::size_t>(f[k])]);
    fs.push_back(std::move(g));
  }
  std::sort(fs.begin(), fs.end());
  std::string out;
  for (const auto& f : fs) {
    for (int x : f) out += std::to_string(x) + ",";
    out += ";";
  }
  return out;
}

// Whether swapping u and v maps the fact set onto itself.
bool twins(const Structure& s, const std::set<std::vector<int>>& all, int u, int v) {
  for (int w : {u, v})
    for (std::size_t fi : s.occurs[static_cast<std::size_t>(w)]) {
      std::vector<int> g = s.facts[fi];
      for (std::size_t k = 1; k < g.size(); ++k) g[k] = g[k] == u ? v : g[k] == v ? u : g[k];
      if (!all.count(g)) return false;
    }
  return true;
}

class Labeler {
 public:
  explicit Labeler(const Structure& s) : s_(s), all_(s.facts.begin(), s.facts.end()) {}

  void search(std::vector<int> colors) {
    refine(s_, colors);
    // First non-singleton cell of smallest colour.
    std::map<int, std::vector<int>> cells;
    for (std::size_t v = 0; v < colors.size(); ++v) cells[colors[v]].push_back(static_cast<int>(v));
    const std::vector<int>* target = nullptr;
    for (const auto& [c, members] : cells)
      if (members.size() > 1) {
        target = &members;
        break;
      }
    if (!target) {
      std::string code = encode(s_, colors);
      if (!found_ || code < best_) {
        best_ = std::move(code);
        best_colors_ = colors;
        found_ = true;
      }
      return;
    }
    const int cell = colors[static_cast<std::size_t>((*target)[0])];
    std::vector<int> reps;
    for (int v : *target) {
      bool covered = false;
      for (int r : reps)
        if (twins(s_, all_, r, v)) {
          covered = true;
          break;
        }
      if (!covered) reps.push_back(v);
    }
    for (int v : reps) {
      // Individualize v: it keeps the cell colour, the rest of the cell moves
      // just above it; colours are re-ranked by refine.
      std::vector<int> next(colors.size());
      for (std::size_t u = 0; u < colors.size(); ++u)
        next[u] = 2 * colors[u] + ((colors[u] == cell && static_cast<int>(u) != v) ? 1 : 0);
      search(std::move(next));
    }
  }

  const std::vector<int>& colors() const { return best_colors_; }
  const std::string& key() const { return best_; }

 private:
  const Structure& s_;
  std::set<std::vector<int>> all_;
  std::string best_;
  std::vector<int> best_colors_;
  bool found_ = false;
};

}  // namespace

Canonical canonical_form(const Database& d, const Tuple& tuple) {
  Structure s;
  std::map<Name, int> ids;
  for (const auto& n : d.adom()) {
    ids.emplace(n, static_cast<int>(s.names.size()));
    s.names.push_back(n);
  }
  for (const auto& n : tuple)
    if (ids.emplace(n, static_cast<int>(s.names.size())).second) s.names.push_back(n);
  std::map<std::pair<Name, std::size_t>, int> rel_ids;
  for (const auto& f : d.facts) rel_ids.emplace(std::make_pair(f.relation, f.args.size()), 0);
  int r = 0;
  for (auto& [k, v] : rel_ids) v = r++;
  s.occurs.resize(s.names.size());
  for (const auto& f : d.facts) {
    std::vector<int> g{rel_ids.at({f.relation, f.args.size()})};
    for (const auto& a : f.args) g.push_back(ids.at(a));
    for (std::size_t k = 1; k < g.size(); ++k) {
      auto& occ = s.occurs[static_cast<std::size_t>(g[k])];
      if (occ.empty() || occ.back() != s.facts.size()) occ.push_back(s.facts.size());
    }
    s.facts.push_back(std::move(g));
  }

  // Initial colour: the tuple positions holding the constant.
  std::vector<std::pair<std::vector<int>, std::size_t>> init;
  for (std::size_t v = 0; v < s.names.size(); ++v) {
    std::vector<int> pos;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      if (tuple[i] == s.names[v]) pos.push_back(static_cast<int>(i));
    if (pos.empty()) pos.push_back(1 << 20);
    init.emplace_back(std::move(pos), v);
  }
  std::sort(init.begin(), init.end());
  std::vector<int> colors(s.names.size());
  for (std::size_t i = 0, c = 0; i < init.size(); ++i) {
    if (i > 0 && init[i].first != init[i - 1].first) ++c;
    colors[init[i].second] = static_cast<int>(c);
  }

  Labeler lab(s);
  lab.search(colors);
  Canonical out;
  // The signature of the relations is part of the key.
  for (const auto& [k, v] : rel_ids) out.key += k.first + "/" + std::to_string(k.second) + " ";
  out.key += "| " + lab.key() + "| ";
  for (const auto& n : tuple) out.key += std::to_string(lab.colors()[static_cast<std::size_t>(ids.at(n))]) + ",";
  for (std::size_t v = 0; v < s.names.size(); ++v)
    out.renaming[s.names[v]] = "c" + std::to_string(lab.colors()[v]);
  for (const auto& f : d.facts) {
    Fact g{f.relation, {}};
    for (const auto& a : f.args) g.args.push_back(out.renaming.at(a));
    out.database.facts.insert(std::move(g));
  }
  for (const auto& n : tuple) out.tuple.push_back(out.renaming.at(n));
  return out;
}

std::string canonical_key(const CQ& q) {
  const QuotientCQ quo = quotient(q);
  Database d(quo.atoms);
  Canonical c = canonical_form(d, quo.answer);
  // Quantified variables outside atoms still matter for satisfiability over
  // the empty database; count them.
  std::set<Name> used = d.adom();
  used.insert(quo.answer.begin(), quo.answer.end());
  std::size_t floating = 0;
  for (const auto& v : quo.variables)
    if (!used.count(v)) ++floating;
  return c.key + "#" + std::to_string(floating);
}

}  // namespace obdax
