#include "rescalc/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace rescalc {

namespace {

// An explicit substitution detached from its body.
struct Record {
    std::vector<Binder> binders;
    TermP arg;
    std::vector<std::string> deps;
};

bool binds(const Record& r, const std::string& x) {
    return std::any_of(r.binders.begin(), r.binders.end(), [&](const Binder& b) { return b.name == x; });
}

bool depends_on(const Record& inner, const Record& outer) {
    return std::any_of(inner.deps.begin(), inner.deps.end(), [&](const std::string& x) { return binds(outer, x); });
}

class Canonicalizer {
public:
    explicit Canonicalizer(std::set<std::string> globals) : globals_(std::move(globals)) {}

    TermP extract(const TermP& t, std::vector<Record>& out) {
        switch (t->kind) {
        case TermKind::Var: return t;
        case TermKind::ESub: {
            TermP body = extract(t->kids[0], out);
            TermP arg = extract(t->kids[1], out);
            out.push_back({t->binders, arg, free_vars(arg)});
            return body;
        }
        case TermKind::Abs: {
            std::vector<Record> local;
            TermP body = extract(t->kids[0], local);
            std::vector<bool> stuck(local.size(), false);
            std::set<std::string> blocking;
            for (const auto& b : t->binders)
                blocking.insert(b.name);
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t i = 0; i < local.size(); ++i) {
                    if (stuck[i])
                        continue;
                    if (std::any_of(local[i].deps.begin(), local[i].deps.end(),
                                    [&](const std::string& x) { return blocking.count(x) > 0; })) {
                        stuck[i] = true;
                        changed = true;
                        for (const auto& b : local[i].binders)
                            blocking.insert(b.name);
                    }
                }
            }
            std::vector<Record> kept;
            for (std::size_t i = 0; i < local.size(); ++i)
                (stuck[i] ? kept : out).push_back(std::move(local[i]));
            std::vector<std::string> own;
            for (const auto& b : t->binders)
                own.push_back(b.name);
            return abs(t->binders, build_chain(body, std::move(kept), own));
        }
        default: {
            std::vector<TermP> kids;
            for (const auto& k : t->kids)
                kids.push_back(extract(k, out));
            return with_kids(t, std::move(kids));
        }
        }
    }

    // Wraps skel in all records, innermost first. Records are labelled by a
    // traversal that starts at the skeleton and follows variable links, so the
    // order never depends on the names chosen for bound variables.
    TermP build_chain(const TermP& skel, std::vector<Record> recs, const std::vector<std::string>& abs_binders) {
        if (recs.empty())
            return skel;
        const std::size_t n = recs.size();
        std::map<std::string, std::size_t> bound_by;
        std::map<std::string, std::size_t> used_in;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& b : recs[i].binders)
                bound_by[b.name] = i;
            for (const auto& x : recs[i].deps)
                used_in[x] = i;
        }

        std::vector<int> label(n, -1);
        int next = 0;
        auto traverse = [&](std::deque<std::size_t> queue, std::vector<int>& lab, int& counter) {
            while (!queue.empty()) {
                std::size_t r = queue.front();
                queue.pop_front();
                auto visit = [&](std::size_t k) {
                    if (lab[k] < 0) {
                        lab[k] = counter++;
                        queue.push_back(k);
                    }
                };
                for (const auto& b : recs[r].binders)
                    if (auto it = used_in.find(b.name); it != used_in.end())
                        visit(it->second);
                for (const auto& x : recs[r].deps)
                    if (auto it = bound_by.find(x); it != bound_by.end())
                        visit(it->second);
            }
        };

        std::deque<std::size_t> start;
        for (const auto& x : free_vars(skel))
            if (auto it = bound_by.find(x); it != bound_by.end() && label[it->second] < 0) {
                label[it->second] = next++;
                start.push_back(it->second);
            }
        traverse(start, label, next);

        for (;;) {
            std::optional<std::size_t> best;
            std::string best_key;
            for (std::size_t i = 0; i < n; ++i) {
                if (label[i] >= 0)
                    continue;
                bool anchor = std::none_of(recs[i].deps.begin(), recs[i].deps.end(),
                                           [&](const std::string& x) { return bound_by.count(x) > 0; });
                if (!anchor)
                    continue;
                std::string key = component_key(recs, i, label, bound_by, used_in, abs_binders);
                if (!best || key < best_key) {
                    best = i;
                    best_key = std::move(key);
                }
            }
            if (!best)
                break;
            label[*best] = next++;
            traverse({*best}, label, next);
        }

        std::vector<bool> placed(n, false);
        TermP out = skel;
        for (std::size_t round = 0; round < n; ++round) {
            std::optional<std::size_t> pick;
            for (std::size_t i = 0; i < n; ++i) {
                if (placed[i])
                    continue;
                bool available = true;
                for (std::size_t j = 0; j < n && available; ++j)
                    if (!placed[j] && j != i && depends_on(recs[j], recs[i]))
                        available = false;
                if (available && (!pick || label[i] < label[*pick]))
                    pick = i;
            }
            placed[*pick] = true;
            out = esub(out, recs[*pick].binders, recs[*pick].arg);
        }
        return out;
    }

private:
    std::string describe(const std::string& x, const std::map<std::string, std::size_t>& bound_by,
                         const std::vector<int>& lab, const std::vector<Record>& recs,
                         const std::vector<std::string>& abs_binders) const {
        if (auto it = bound_by.find(x); it != bound_by.end()) {
            if (lab[it->second] < 0)
                return "?";
            const auto& bs = recs[it->second].binders;
            auto pos = std::find_if(bs.begin(), bs.end(), [&](const Binder& b) { return b.name == x; }) - bs.begin();
            return "r" + std::to_string(lab[it->second]) + "." + std::to_string(pos);
        }
        if (auto it = std::find(abs_binders.begin(), abs_binders.end(), x); it != abs_binders.end())
            return "#" + std::to_string(it - abs_binders.begin());
        if (globals_.count(x))
            return x;
        return "?";
    }

    // A name-free description of the records reachable from `start`, used to
    // choose among unlabelled components.
    std::string component_key(const std::vector<Record>& recs, std::size_t start, const std::vector<int>& label,
                              const std::map<std::string, std::size_t>& bound_by,
                              const std::map<std::string, std::size_t>& used_in,
                              const std::vector<std::string>& abs_binders) const {
        std::vector<int> lab(recs.size(), -1);
        int counter = 0;
        std::vector<std::size_t> order;
        std::deque<std::size_t> queue{start};
        lab[start] = counter++;
        while (!queue.empty()) {
            std::size_t r = queue.front();
            queue.pop_front();
            order.push_back(r);
            auto visit = [&](std::size_t k) {
                if (lab[k] < 0 && label[k] < 0) {
                    lab[k] = counter++;
                    queue.push_back(k);
                }
            };
            for (const auto& b : recs[r].binders)
                if (auto it = used_in.find(b.name); it != used_in.end())
                    visit(it->second);
            for (const auto& x : recs[r].deps)
                if (auto it = bound_by.find(x); it != bound_by.end())
                    visit(it->second);
        }
        std::string key;
        for (std::size_t r : order) {
            key += "{";
            for (const auto& b : recs[r].binders)
                key += to_string(b.type) + ",";
            std::map<std::string, std::string> renaming;
            for (const auto& x : recs[r].deps)
                renaming[x] = describe(x, bound_by, lab, recs, abs_binders);
            key += ":=" + to_string(rename_free(alpha_canonical(recs[r].arg), renaming)) + "}";
        }
        return key;
    }

    std::set<std::string> globals_;
};

} // namespace

TermP struct_canon(const TermP& s) {
    TermP c = clean(s);
    auto fv = free_vars(c);
    Canonicalizer canon({fv.begin(), fv.end()});
    std::vector<Record> recs;
    TermP skel = canon.extract(c, recs);
    return canon.build_chain(skel, std::move(recs), {});
}

bool struct_equiv(const TermP& s, const TermP& t) { return alpha_eq(struct_canon(s), struct_canon(t)); }

} // namespace rescalc
