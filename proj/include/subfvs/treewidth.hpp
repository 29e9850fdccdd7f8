#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace subfvs {

struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    int width() const {
        std::size_t w = 0;
        for (const VertexSet& b : bags) w = std::max(w, b.size());
        return static_cast<int>(w) - 1;
    }
};

/// The three axioms, plus the requirement that the bag graph is a tree.
inline bool validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    if (td.bags.empty()) return false;
    if (td.edges.size() + 1 != td.bags.size()) return false;
    std::vector<std::vector<std::size_t>> adj(td.bags.size());
    for (const auto& [a, b] : td.edges) {
        if (a >= td.bags.size() || b >= td.bags.size() || a == b) return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // connectivity of the bag tree
    {
        std::vector<bool> seen(td.bags.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    ++count;
                    stack.push_back(y);
                }
        }
        if (count != td.bags.size()) return false;
    }
    // every vertex somewhere, every edge covered
    std::map<VertexId, std::vector<std::size_t>> holders;
    for (std::size_t i = 0; i < td.bags.size(); ++i)
        for (VertexId v : td.bags[i]) {
            if (!g.has_vertex(v)) return false;
            holders[v].push_back(i);
        }
    for (VertexId v : g.vertices())
        if (!holders.count(v)) return false;
    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (std::size_t i : holders[u])
            if (td.bags[i].count(v)) covered = true;
        if (!covered) return false;
    }
    // connected traces
    for (const auto& [v, bags_of_v] : holders) {
        std::set<std::size_t> member(bags_of_v.begin(), bags_of_v.end());
        std::vector<std::size_t> stack{bags_of_v.front()};
        std::set<std::size_t> seen{bags_of_v.front()};
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : adj[x])
                if (member.count(y) && seen.insert(y).second) stack.push_back(y);
        }
        if (seen.size() != member.size()) return false;
    }
    return true;
}

/// Min-fill elimination ordering (ties: degree, then id), turned into a tree
/// decomposition the standard way. Valid on any graph; width is heuristic.
inline TreeDecomposition decompose(const Graph& g) {
    TreeDecomposition td;
    if (g.empty()) {
        td.bags.push_back({});
        return td;
    }
    Graph h = g;
    std::vector<VertexId> elim_order;
    std::vector<VertexSet> elim_bag;
    while (!h.empty()) {
        VertexId best = 0;
        long best_fill = -1;
        std::size_t best_deg = 0;
        for (VertexId v : h.vertices()) {
            const auto& nbrs = h.neighbors(v);
            long fill = 0;
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                    if (!h.has_edge(nbrs[i], nbrs[j])) ++fill;
            if (best_fill < 0 || fill < best_fill ||
                (fill == best_fill && h.degree(v) < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = h.degree(v);
            }
        }
        VertexSet bag{best};
        const std::vector<VertexId> nbrs = h.neighbors(best);
        for (VertexId u : nbrs) bag.insert(u);
        elim_order.push_back(best);
        elim_bag.push_back(bag);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (!h.has_edge(nbrs[i], nbrs[j])) h.add_edge(nbrs[i], nbrs[j]);
        h.remove_vertex(best);
    }
    std::map<VertexId, std::size_t> elim_index;
    for (std::size_t i = 0; i < elim_order.size(); ++i) elim_index[elim_order[i]] = i;
    td.bags = elim_bag;
    std::vector<std::size_t> comp(td.bags.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        // the earliest later-eliminated bag member holds the connecting bag
        std::size_t best_j = td.bags.size();
        for (VertexId u : td.bags[i])
            if (u != elim_order[i] && elim_index[u] > i) best_j = std::min(best_j, elim_index[u]);
        if (best_j < td.bags.size()) {
            td.edges.emplace_back(i, best_j);
            comp[find(i)] = find(best_j);
        }
    }
    // stitch leftover components (isolated parts of the graph) into one tree
    for (std::size_t i = 1; i < td.bags.size(); ++i) {
        if (find(i) != find(0)) {
            td.edges.emplace_back(0, i);
            comp[find(i)] = find(0);
        }
    }
    return td;
}

// --------------------------------------------------------------------------
// PACE-style text format:
//   s td <#bags> <max bag size> <#vertices>
//   b <bag index, 1-based> <vertices, 1-based>
//   <i> <j>            one line per tree edge
// --------------------------------------------------------------------------

inline void write_td(std::ostream& out, const TreeDecomposition& td, std::size_t n_vertices) {
    std::size_t maxbag = 0;
    for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
    out << "s td " << td.bags.size() << ' ' << maxbag << ' ' << n_vertices << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (VertexId v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (const auto& [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
}

inline TreeDecomposition read_td(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    std::size_t expected_bags = 0;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        const std::string where = " at line " + std::to_string(lineno);
        if (tag == "s") {
            std::string td_tag;
            std::size_t maxbag = 0, n = 0;
            if (!(ls >> td_tag >> expected_bags >> maxbag >> n) || td_tag != "td")
                throw input_error("malformed td header" + where);
            td.bags.resize(expected_bags);
            have_header = true;
        } else if (tag == "b") {
            if (!have_header) throw input_error("bag before header" + where);
            std::size_t idx = 0;
            if (!(ls >> idx) || idx == 0 || idx > expected_bags)
                throw input_error("bad bag index" + where);
            std::uint64_t v;
            while (ls >> v) {
                if (v == 0) throw input_error("vertex 0 in 1-based td file" + where);
                td.bags[idx - 1].insert(static_cast<VertexId>(v - 1));
            }
        } else {
            std::size_t a = 0, b = 0;
            std::istringstream el(line);
            if (!(el >> a >> b) || a == 0 || b == 0 || a > expected_bags || b > expected_bags)
                throw input_error("bad decomposition edge" + where);
            td.edges.emplace_back(a - 1, b - 1);
        }
    }
    if (!have_header) throw input_error("missing td header");
    return td;
}

// --------------------------------------------------------------------------
// Dynamic program over a nice form of the decomposition. States track the
// partition of the kept bag vertices into forest blocks plus one hit flag
// per must-hit set intersecting the bag.
// --------------------------------------------------------------------------

namespace dpdetail {

struct NiceNode {
    enum class Kind { Leaf, Introduce, Forget, Join } kind = Kind::Leaf;
    std::vector<VertexId> bag; // sorted
    VertexId subject = 0;      // introduce/forget
    int child1 = -1;
    int child2 = -1;
    std::vector<int> active_h; // indices of must-hit sets meeting the bag
};

struct NiceTree {
    std::vector<NiceNode> nodes; // post-order; root last
};

inline NiceTree build_nice_tree(const TreeDecomposition& td) {
    NiceTree nt;
    std::vector<std::vector<std::size_t>> adj(td.bags.size());
    for (const auto& [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    auto add_node = [&nt](dpdetail::NiceNode n) {
        nt.nodes.push_back(std::move(n));
        return static_cast<int>(nt.nodes.size()) - 1;
    };
    auto sorted_bag = [&td](std::size_t i) {
        return std::vector<VertexId>(td.bags[i].begin(), td.bags[i].end());
    };

    // chain from an existing node's bag to a target bag: forgets then intros
    auto morph = [&](int from, const std::vector<VertexId>& target) {
        std::vector<VertexId> cur = nt.nodes[from].bag;
        for (VertexId v : std::vector<VertexId>(cur)) {
            if (std::binary_search(target.begin(), target.end(), v)) continue;
            NiceNode n;
            n.kind = NiceNode::Kind::Forget;
            n.subject = v;
            n.child1 = from;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            n.bag = cur;
            std::sort(n.bag.begin(), n.bag.end());
            cur = n.bag;
            from = add_node(std::move(n));
        }
        for (VertexId v : target) {
            if (std::binary_search(cur.begin(), cur.end(), v)) continue;
            NiceNode n;
            n.kind = NiceNode::Kind::Introduce;
            n.subject = v;
            n.child1 = from;
            cur.push_back(v);
            std::sort(cur.begin(), cur.end());
            n.bag = cur;
            from = add_node(std::move(n));
        }
        return from;
    };

    std::function<int(std::size_t, std::size_t)> build = [&](std::size_t bag_idx,
                                                             std::size_t parent) {
        const std::vector<VertexId> target = sorted_bag(bag_idx);
        std::vector<int> pieces;
        for (std::size_t c : adj[bag_idx]) {
            if (c == parent) continue;
            const int sub = build(c, bag_idx);
            pieces.push_back(morph(sub, target));
        }
        if (pieces.empty()) {
            NiceNode leaf;
            leaf.kind = NiceNode::Kind::Leaf;
            const int l = add_node(std::move(leaf));
            return morph(l, target);
        }
        int acc = pieces[0];
        for (std::size_t i = 1; i < pieces.size(); ++i) {
            NiceNode j;
            j.kind = NiceNode::Kind::Join;
            j.bag = target;
            j.child1 = acc;
            j.child2 = pieces[i];
            acc = add_node(std::move(j));
        }
        return acc;
    };

    const int top = build(0, td.bags.size());
    morph(top, {}); // forget everything; the final node is the root
    return nt;
}

constexpr char kDeleted = '\x7f';

struct Entry {
    int cost = 0;
    int from1 = -1;
    int from2 = -1;
    char decision = 0; // introduce: 'd' deleted, 'k' kept
};

struct Table {
    std::map<std::string, int> index;
    std::vector<std::string> keys;
    std::vector<Entry> entries;

    void offer(const std::string& key, Entry e) {
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, static_cast<int>(keys.size()));
            keys.push_back(key);
            entries.push_back(e);
        } else if (e.cost < entries[it->second].cost) {
            entries[it->second] = e;
        }
    }
};

// key layout: one char per bag vertex (kDeleted or block id), then one char
// ('0'/'1') per active must-hit set
inline std::string canonical_key(const std::vector<int>& blocks, const std::string& flags) {
    std::string key;
    key.reserve(blocks.size() + flags.size());
    std::map<int, char> relabel;
    char next = 0;
    for (int b : blocks) {
        if (b < 0) {
            key.push_back(kDeleted);
        } else {
            auto it = relabel.find(b);
            if (it == relabel.end()) it = relabel.emplace(b, next++).first;
            key.push_back(it->second);
        }
    }
    key += flags;
    return key;
}

} // namespace dpdetail

/// Minimum deletion set leaving the graph acyclic and meeting every must-hit
/// set, if one of size <= k exists. The certificate is rebuilt from
/// backpointers and re-verified before returning.
inline std::optional<VertexSet> dp_annotated_fvs(const Instance& inst,
                                                 const TreeDecomposition& td) {
    if (!validate_decomposition(inst.g, td)) throw rule_error("dp_annotated_fvs: invalid decomposition");
    using namespace dpdetail;
    NiceTree nt = build_nice_tree(td);

    for (NiceNode& node : nt.nodes)
        for (std::size_t h = 0; h < inst.must_hit.size(); ++h)
            for (VertexId v : node.bag)
                if (inst.must_hit[h].count(v)) {
                    node.active_h.push_back(static_cast<int>(h));
                    break;
                }

    std::vector<Table> tables(nt.nodes.size());
    for (std::size_t ni = 0; ni < nt.nodes.size(); ++ni) {
        const NiceNode& node = nt.nodes[ni];
        Table& table = tables[ni];
        switch (node.kind) {
            case NiceNode::Kind::Leaf: {
                table.offer("", Entry{0, -1, -1, 0});
                break;
            }
            case NiceNode::Kind::Introduce: {
                const NiceNode& ch = nt.nodes[node.child1];
                const Table& ct = tables[node.child1];
                const std::size_t pos = static_cast<std::size_t>(
                    std::lower_bound(node.bag.begin(), node.bag.end(), node.subject) -
                    node.bag.begin());
                // neighbors of the subject inside the bag
                std::vector<std::size_t> nbr_pos;
                for (std::size_t i = 0; i < ch.bag.size(); ++i)
                    if (inst.g.has_edge(node.subject, ch.bag[i])) nbr_pos.push_back(i);
                // which must-hit set contains the subject, if any
                int subject_h = -1;
                for (std::size_t h = 0; h < inst.must_hit.size(); ++h)
                    if (inst.must_hit[h].count(node.subject)) subject_h = static_cast<int>(h);

                for (int si = 0; si < static_cast<int>(ct.keys.size()); ++si) {
                    const std::string& ck = ct.keys[si];
                    // remap child flags into the node's active list
                    auto flags_for = [&](bool subject_deleted) {
                        std::string flags(node.active_h.size(), '0');
                        for (std::size_t a = 0; a < node.active_h.size(); ++a) {
                            const int h = node.active_h[a];
                            const auto cit = std::find(ch.active_h.begin(), ch.active_h.end(), h);
                            if (cit != ch.active_h.end()) {
                                const std::size_t ca = static_cast<std::size_t>(cit - ch.active_h.begin());
                                flags[a] = ck[ch.bag.size() + ca];
                            }
                            if (subject_deleted && h == subject_h) flags[a] = '1';
                        }
                        return flags;
                    };
                    // (a) delete the subject
                    {
                        std::vector<int> blocks;
                        int maxb = -1;
                        for (std::size_t i = 0; i < ch.bag.size(); ++i) {
                            const char c = ck[i];
                            blocks.push_back(c == kDeleted ? -1 : c);
                            if (c != kDeleted) maxb = std::max(maxb, static_cast<int>(c));
                        }
                        blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(pos), -1);
                        table.offer(canonical_key(blocks, flags_for(true)),
                                    Entry{ct.entries[si].cost + 1, si, -1, 'd'});
                    }
                    // (b) keep the subject, merging neighbor blocks
                    {
                        std::vector<int> blocks;
                        int maxb = -1;
                        bool ok = true;
                        std::set<int> nbr_blocks;
                        for (std::size_t i = 0; i < ch.bag.size(); ++i) {
                            const char c = ck[i];
                            blocks.push_back(c == kDeleted ? -1 : c);
                            if (c != kDeleted) maxb = std::max(maxb, static_cast<int>(c));
                        }
                        for (std::size_t i : nbr_pos) {
                            if (ck[i] == kDeleted) continue;
                            if (!nbr_blocks.insert(ck[i]).second) ok = false; // two nbrs, one block
                        }
                        if (ok) {
                            const int fresh = maxb + 1;
                            for (int& b : blocks)
                                if (b >= 0 && nbr_blocks.count(b)) b = fresh;
                            blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(pos), fresh);
                            table.offer(canonical_key(blocks, flags_for(false)),
                                        Entry{ct.entries[si].cost, si, -1, 'k'});
                        }
                    }
                }
                break;
            }
            case NiceNode::Kind::Forget: {
                const NiceNode& ch = nt.nodes[node.child1];
                const Table& ct = tables[node.child1];
                const std::size_t pos = static_cast<std::size_t>(
                    std::lower_bound(ch.bag.begin(), ch.bag.end(), node.subject) - ch.bag.begin());
                // must-hit sets finalized here (active below, inactive now)
                std::vector<std::size_t> dying; // positions in child's active list
                for (std::size_t ca = 0; ca < ch.active_h.size(); ++ca)
                    if (std::find(node.active_h.begin(), node.active_h.end(), ch.active_h[ca]) ==
                        node.active_h.end())
                        dying.push_back(ca);

                for (int si = 0; si < static_cast<int>(ct.keys.size()); ++si) {
                    const std::string& ck = ct.keys[si];
                    bool ok = true;
                    for (std::size_t ca : dying)
                        if (ck[ch.bag.size() + ca] != '1') ok = false;
                    if (!ok) continue;
                    std::vector<int> blocks;
                    for (std::size_t i = 0; i < ch.bag.size(); ++i) {
                        if (i == pos) continue;
                        const char c = ck[i];
                        blocks.push_back(c == kDeleted ? -1 : c);
                    }
                    std::string flags(node.active_h.size(), '0');
                    for (std::size_t a = 0; a < node.active_h.size(); ++a) {
                        const auto cit =
                            std::find(ch.active_h.begin(), ch.active_h.end(), node.active_h[a]);
                        const std::size_t ca = static_cast<std::size_t>(cit - ch.active_h.begin());
                        flags[a] = ck[ch.bag.size() + ca];
                    }
                    table.offer(canonical_key(blocks, flags), Entry{ct.entries[si].cost, si, -1, 0});
                }
                break;
            }
            case NiceNode::Kind::Join: {
                const Table& t1 = tables[node.child1];
                const Table& t2 = tables[node.child2];
                const std::size_t bag_size = node.bag.size();
                // group right states by their kept/deleted pattern
                std::map<std::string, std::vector<int>> by_pattern;
                for (int sj = 0; sj < static_cast<int>(t2.keys.size()); ++sj) {
                    std::string pat(bag_size, '0');
                    for (std::size_t i = 0; i < bag_size; ++i)
                        pat[i] = t2.keys[sj][i] == kDeleted ? '0' : '1';
                    by_pattern[pat].push_back(sj);
                }
                for (int si = 0; si < static_cast<int>(t1.keys.size()); ++si) {
                    const std::string& k1 = t1.keys[si];
                    std::string pat(bag_size, '0');
                    int deleted = 0;
                    for (std::size_t i = 0; i < bag_size; ++i) {
                        pat[i] = k1[i] == kDeleted ? '0' : '1';
                        deleted += k1[i] == kDeleted ? 1 : 0;
                    }
                    const auto git = by_pattern.find(pat);
                    if (git == by_pattern.end()) continue;
                    for (int sj : git->second) {
                        const std::string& k2 = t2.keys[sj];
                        // merge forests: union left blocks along right blocks
                        std::map<int, int> uf; // left block -> parent
                        std::function<int(int)> find = [&uf](int x) {
                            while (uf[x] != x) x = uf[x] = uf[uf[x]];
                            return x;
                        };
                        for (std::size_t i = 0; i < bag_size; ++i)
                            if (k1[i] != kDeleted) uf.emplace(k1[i], k1[i]);
                        std::map<int, int> right_rep; // right block -> left root
                        bool ok = true;
                        for (std::size_t i = 0; i < bag_size && ok; ++i) {
                            if (k2[i] == kDeleted) continue;
                            const int rb = k2[i];
                            const int lroot = find(k1[i]);
                            auto rit = right_rep.find(rb);
                            if (rit == right_rep.end()) {
                                right_rep.emplace(rb, lroot);
                            } else {
                                const int other = find(rit->second);
                                if (other == lroot) {
                                    ok = false; // joining two forests closes a cycle
                                } else {
                                    uf[other] = lroot;
                                    rit->second = lroot;
                                }
                            }
                        }
                        if (!ok) continue;
                        std::vector<int> blocks;
                        for (std::size_t i = 0; i < bag_size; ++i)
                            blocks.push_back(k1[i] == kDeleted ? -1 : find(k1[i]));
                        std::string flags(node.active_h.size(), '0');
                        for (std::size_t a = 0; a < node.active_h.size(); ++a) {
                            const char f1 = k1[bag_size + a];
                            const char f2 = k2[bag_size + a];
                            flags[a] = (f1 == '1' || f2 == '1') ? '1' : '0';
                        }
                        table.offer(canonical_key(blocks, flags),
                                    Entry{t1.entries[si].cost + t2.entries[sj].cost - deleted, si,
                                          sj, 0});
                    }
                }
                break;
            }
        }
    }

    const Table& root = tables.back();
    if (root.entries.empty()) return std::nullopt;
    if (root.entries.size() != 1) throw internal_error("dp: root table not a singleton");
    const int opt = root.entries[0].cost;
    if (opt > inst.k) return std::nullopt;

    // walk the backpointers, collecting deleted subjects at introduce nodes
    VertexSet sol;
    std::vector<std::pair<int, int>> stack{{static_cast<int>(nt.nodes.size()) - 1, 0}};
    while (!stack.empty()) {
        const auto [ni, si] = stack.back();
        stack.pop_back();
        const NiceNode& node = nt.nodes[ni];
        const Entry& e = tables[ni].entries[si];
        switch (node.kind) {
            case NiceNode::Kind::Leaf: break;
            case NiceNode::Kind::Introduce:
                if (e.decision == 'd') sol.insert(node.subject);
                stack.emplace_back(node.child1, e.from1);
                break;
            case NiceNode::Kind::Forget:
                stack.emplace_back(node.child1, e.from1);
                break;
            case NiceNode::Kind::Join:
                stack.emplace_back(node.child1, e.from1);
                stack.emplace_back(node.child2, e.from2);
                break;
        }
    }
    if (static_cast<int>(sol.size()) != opt)
        throw internal_error("dp: certificate size mismatch");
    if (!is_fvs(inst.g, sol)) throw internal_error("dp: certificate is not a solution");
    for (const VertexSet& h : inst.must_hit)
        if (set_intersect(sol, h).empty()) throw internal_error("dp: certificate misses a set");
    return sol;
}

} // namespace subfvs
