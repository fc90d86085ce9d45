#include "partition.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace perigid::detail {

namespace {

template <class T>
void erase_value(std::vector<T>& v, const T& x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it != v.end()) {
        *it = v.back();
        v.pop_back();
    }
}

}  // namespace

// ---- forests ----

ForestBlock::ForestBlock(int vertex_count, const Endpoints& ends)
    : ends_(ends),
      member_(ends.size(), 0),
      adj_(static_cast<std::size_t>(vertex_count)),
      root_(adj_.size()),
      parent_(adj_.size()),
      parent_edge_(adj_.size()),
      depth_(adj_.size()),
      up_(adj_.size()),
      up_epoch_(adj_.size(), -1) {}

void ForestBlock::rebuild() {
    std::fill(root_.begin(), root_.end(), -1);
    std::vector<VertexId> queue;
    queue.reserve(adj_.size());
    for (std::size_t r = 0; r < adj_.size(); ++r) {
        if (root_[r] >= 0) continue;
        const auto rv = static_cast<VertexId>(r);
        root_[r] = rv;
        parent_[r] = rv;
        depth_[r] = 0;
        queue.assign(1, rv);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId x = queue[head];
            for (const auto& [e, y] : adj_[static_cast<std::size_t>(x)]) {
                const auto yi = static_cast<std::size_t>(y);
                if (root_[yi] >= 0) continue;
                root_[yi] = rv;
                parent_[yi] = x;
                parent_edge_[yi] = e;
                depth_[yi] = depth_[static_cast<std::size_t>(x)] + 1;
                queue.push_back(y);
            }
        }
    }
    dirty_ = false;
}

void ForestBlock::begin_search(int epoch) { epoch_ = epoch; }

// Topmost vertex of the contracted piece containing v.
VertexId ForestBlock::top(VertexId v) {
    VertexId r = v;
    while (up_epoch_[static_cast<std::size_t>(r)] == epoch_ && up_[static_cast<std::size_t>(r)] != r) {
        r = up_[static_cast<std::size_t>(r)];
    }
    while (v != r) {
        const VertexId next = up_[static_cast<std::size_t>(v)];
        up_[static_cast<std::size_t>(v)] = r;
        v = next;
    }
    return r;
}

bool ForestBlock::probe(EdgeId z, std::vector<EdgeId>& exchange) {
    const auto [u, v] = ends_[z];
    if (u == v) return false;
    if (dirty_) rebuild();
    if (root_[static_cast<std::size_t>(u)] != root_[static_cast<std::size_t>(v)]) return true;
    VertexId x = top(u);
    VertexId y = top(v);
    while (x != y) {
        if (depth_[static_cast<std::size_t>(x)] < depth_[static_cast<std::size_t>(y)]) std::swap(x, y);
        const auto xi = static_cast<std::size_t>(x);
        exchange.push_back(parent_edge_[xi]);
        up_[xi] = parent_[xi];
        up_epoch_[xi] = epoch_;
        const auto pi = static_cast<std::size_t>(parent_[xi]);
        if (up_epoch_[pi] != epoch_) {
            up_epoch_[pi] = epoch_;
            up_[pi] = parent_[xi];
        }
        x = top(parent_[xi]);
    }
    return false;
}

void ForestBlock::insert(EdgeId z) {
    const auto [u, v] = ends_[z];
    member_[z] = 1;
    adj_[static_cast<std::size_t>(u)].emplace_back(z, v);
    adj_[static_cast<std::size_t>(v)].emplace_back(z, u);
    dirty_ = true;
}

void ForestBlock::remove(EdgeId y) {
    const auto [u, v] = ends_[y];
    member_[y] = 0;
    erase_value(adj_[static_cast<std::size_t>(u)], std::pair<EdgeId, VertexId>{y, v});
    erase_value(adj_[static_cast<std::size_t>(v)], std::pair<EdgeId, VertexId>{y, u});
    dirty_ = true;
}

std::vector<EdgeId> ForestBlock::members() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < member_.size(); ++e) {
        if (member_[e]) out.push_back(e);
    }
    return out;
}

// ---- in-degree limited orientations ----

IndegreeBlock::IndegreeBlock(const Endpoints& ends, std::vector<int> limits)
    : ends_(ends),
      limits_(std::move(limits)),
      head_(ends.size(), -1),
      in_(limits_.size()),
      seen_(limits_.size(), 0),
      dead_(limits_.size(), -1) {}

VertexId IndegreeBlock::other_end(EdgeId e, VertexId x) const {
    return ends_[e].first == x ? ends_[e].second : ends_[e].first;
}

void IndegreeBlock::begin_search(int epoch) { epoch_ = epoch; }

// Breadth-first search backwards along in-edges for spare in-degree. Vertices
// found saturated stay dead for the rest of the augmenting search.
bool IndegreeBlock::probe(EdgeId z, std::vector<EdgeId>& exchange) {
    ++stamp_;
    std::vector<VertexId> queue;
    for (VertexId s : {ends_[z].first, ends_[z].second}) {
        const auto si = static_cast<std::size_t>(s);
        if (seen_[si] == stamp_ || dead_[si] == epoch_) continue;
        seen_[si] = stamp_;
        queue.push_back(s);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto xi = static_cast<std::size_t>(queue[i]);
        if (static_cast<int>(in_[xi].size()) < limits_[xi]) return true;
        for (EdgeId e : in_[xi]) {
            const auto wi = static_cast<std::size_t>(other_end(e, queue[i]));
            if (seen_[wi] == stamp_ || dead_[wi] == epoch_) continue;
            seen_[wi] = stamp_;
            queue.push_back(static_cast<VertexId>(wi));
        }
    }
    for (VertexId x : queue) {
        dead_[static_cast<std::size_t>(x)] = epoch_;
        const auto& list = in_[static_cast<std::size_t>(x)];
        exchange.insert(exchange.end(), list.begin(), list.end());
    }
    return false;
}

void IndegreeBlock::insert(EdgeId z) {
    ++stamp_;
    // pred[x]: the edge whose head moves from x's predecessor to x.
    std::vector<VertexId> queue;
    std::vector<std::pair<VertexId, EdgeId>> pred_of;
    std::vector<std::size_t> pred_index;
    const VertexId u = ends_[z].first;
    const VertexId v = ends_[z].second;
    for (VertexId s : {u, v}) {
        const auto si = static_cast<std::size_t>(s);
        if (seen_[si] == stamp_) continue;
        seen_[si] = stamp_;
        queue.push_back(s);
        pred_index.push_back(static_cast<std::size_t>(-1));
        pred_of.emplace_back(s, EdgeId{0});
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const VertexId x = queue[i];
        const auto xi = static_cast<std::size_t>(x);
        if (static_cast<int>(in_[xi].size()) < limits_[xi]) {
            // Walk back to the root, turning every edge on the path.
            std::size_t at = i;
            while (pred_index[at] != static_cast<std::size_t>(-1)) {
                const EdgeId e = pred_of[at].second;
                const std::size_t from = pred_index[at];
                const VertexId old_head = queue[from];
                erase_value(in_[static_cast<std::size_t>(old_head)], e);
                head_[e] = queue[at];
                in_[static_cast<std::size_t>(queue[at])].push_back(e);
                at = from;
            }
            head_[z] = queue[at];
            in_[static_cast<std::size_t>(queue[at])].push_back(z);
            return;
        }
        for (EdgeId e : in_[xi]) {
            const VertexId w = other_end(e, x);
            const auto wi = static_cast<std::size_t>(w);
            if (seen_[wi] == stamp_) continue;
            seen_[wi] = stamp_;
            queue.push_back(w);
            pred_index.push_back(i);
            pred_of.emplace_back(w, e);
        }
    }
    throw std::logic_error("indegree block: insert of a dependent element");
}

void IndegreeBlock::remove(EdgeId y) {
    erase_value(in_[static_cast<std::size_t>(head_[y])], y);
    head_[y] = -1;
}

std::vector<EdgeId> IndegreeBlock::members() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < head_.size(); ++e) {
        if (head_[e] >= 0) out.push_back(e);
    }
    return out;
}

// ---- uniform ----

UniformBlock::UniformBlock(std::size_t ground, std::size_t rank) : rank_(rank), member_(ground, 0) {}

void UniformBlock::begin_search(int) { reported_ = false; }

bool UniformBlock::probe(EdgeId, std::vector<EdgeId>& exchange) {
    if (size_ < rank_) return true;
    if (!reported_) {
        for (EdgeId e = 0; e < member_.size(); ++e) {
            if (member_[e]) exchange.push_back(e);
        }
        reported_ = true;
    }
    return false;
}

void UniformBlock::insert(EdgeId z) {
    member_[z] = 1;
    ++size_;
}

void UniformBlock::remove(EdgeId y) {
    member_[y] = 0;
    --size_;
}

std::vector<EdgeId> UniformBlock::members() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < member_.size(); ++e) {
        if (member_[e]) out.push_back(e);
    }
    return out;
}

// ---- linear ----

LinearBlock::LinearBlock(const std::vector<GainVector>& vectors) : vectors_(vectors) {}

std::size_t LinearBlock::rank_with(EdgeId skip, EdgeId extra) const {
    std::vector<GainVector> rows;
    for (EdgeId e : members_) {
        if (e != skip) rows.push_back(vectors_[e]);
    }
    rows.push_back(vectors_[extra]);
    return integer_rank(rows);
}

bool LinearBlock::probe(EdgeId z, std::vector<EdgeId>& exchange) {
    const EdgeId none = vectors_.size();
    if (rank_with(none, z) == members_.size() + 1) return true;
    for (EdgeId y : members_) {
        if (rank_with(y, z) == members_.size()) exchange.push_back(y);
    }
    return false;
}

void LinearBlock::insert(EdgeId z) { members_.push_back(z); }

void LinearBlock::remove(EdgeId y) { erase_value(members_, y); }

// ---- partitioner ----

Partitioner::Partitioner(std::size_t ground, std::vector<std::unique_ptr<Block>> blocks)
    : blocks_(std::move(blocks)), owner_(ground, -1), label_(ground, 0), pred_(ground, 0) {}

bool Partitioner::add(EdgeId x) {
    ++epoch_;
    for (auto& b : blocks_) b->begin_search(epoch_);
    source_ = x;
    std::deque<EdgeId> queue{x};
    label_[x] = epoch_;
    closure_.assign(1, x);
    while (!queue.empty()) {
        const EdgeId z = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (owner_[z] == static_cast<int>(i)) continue;
            scratch_.clear();
            if (blocks_[i]->probe(z, scratch_)) {
                augment(z, static_cast<int>(i));
                return true;
            }
            for (EdgeId y : scratch_) {
                if (label_[y] == epoch_) continue;
                label_[y] = epoch_;
                pred_[y] = z;
                closure_.push_back(y);
                queue.push_back(y);
            }
        }
    }
    return false;
}

// Every element on the path moves one step: the sink enters `block`, and each
// predecessor takes the place of the element it displaced. All removals go
// first so every intermediate set is a subset of the final independent one.
void Partitioner::augment(EdgeId sink, int block) {
    std::vector<std::pair<EdgeId, int>> moves{{sink, block}};
    for (EdgeId y = sink; y != source_; y = pred_[y]) moves.emplace_back(pred_[y], owner_[y]);
    for (const auto& [e, dest] : moves) {
        if (owner_[e] >= 0) blocks_[static_cast<std::size_t>(owner_[e])]->remove(e);
    }
    for (const auto& [e, dest] : moves) {
        blocks_[static_cast<std::size_t>(dest)]->insert(e);
        owner_[e] = dest;
    }
}

}  // namespace perigid::detail
