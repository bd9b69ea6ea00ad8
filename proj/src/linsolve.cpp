#include "semnorm/linsolve.hpp"

#include "semnorm/polytext.hpp"

namespace semnorm {

SpanSolver::SpanSolver(RingPtr field) : field_(std::move(field)) {
    if (!ring_is_field(field_)) throw internal_error("span solver needs a field");
}

SparseVec SpanSolver::reduce(SparseVec v, std::map<size_t, RingValue>* combo) const {
    while (!v.empty()) {
        size_t pivot = v.begin()->first;
        auto it = rows_.find(pivot);
        if (it == rows_.end()) return v;
        RingValue factor = v.begin()->second;  // row pivots are normalized to 1
        for (const auto& [k, c] : it->second.vec) {
            RingValue delta = ring_mul(factor, c);
            auto vt = v.find(k);
            if (vt == v.end()) {
                v.emplace(k, ring_neg(delta));
            } else {
                RingValue s = ring_sub(vt->second, delta);
                if (ring_is_zero(s))
                    v.erase(vt);
                else
                    vt->second = s;
            }
        }
        if (combo) {
            for (const auto& [cid, c] : it->second.combo) {
                RingValue delta = ring_mul(factor, c);
                auto ct = combo->find(cid);
                if (ct == combo->end()) {
                    combo->emplace(cid, delta);
                } else {
                    RingValue s = ring_add(ct->second, delta);
                    if (ring_is_zero(s))
                        combo->erase(ct);
                    else
                        ct->second = s;
                }
            }
        }
    }
    return v;
}

void SpanSolver::add_vector(size_t column_id, SparseVec v) {
    std::map<size_t, RingValue> combo{{column_id, ring_one(field_)}};
    // reduce, remembering the negated combination of existing rows used
    std::map<size_t, RingValue> used;
    SparseVec res = reduce(std::move(v), &used);
    if (res.empty()) return;  // dependent column
    for (auto& [cid, c] : used) {
        RingValue n = ring_neg(c);
        auto it = combo.find(cid);
        if (it == combo.end())
            combo.emplace(cid, n);
        else
            it->second = ring_add(it->second, n);
    }
    // normalize pivot to 1
    RingValue inv = *ring_try_invert(res.begin()->second);
    for (auto& [k, c] : res) c = ring_mul(inv, c);
    for (auto& [k, c] : combo) c = ring_mul(inv, c);
    size_t pivot = res.begin()->first;
    rows_.emplace(pivot, Row{std::move(res), std::move(combo)});
}

bool SpanSolver::contains(SparseVec target) const { return reduce(std::move(target), nullptr).empty(); }

std::optional<std::map<size_t, RingValue>> SpanSolver::express(SparseVec target) const {
    std::map<size_t, RingValue> combo;
    SparseVec res = reduce(std::move(target), &combo);
    if (!res.empty()) return std::nullopt;
    return combo;
}

SparseVec CoordSpace::coords(const RingValue& v) {
    SparseVec out;
    for (auto& [e, c] : value_flat_terms(v)) {
        if (ring_is_zero(c)) continue;
        RingValue scalar = ring_transport(c, field_);
        auto it = ids_.find(e);
        if (it == ids_.end()) it = ids_.emplace(e, ids_.size()).first;
        out.emplace(it->second, std::move(scalar));
    }
    return out;
}

}  // namespace semnorm
