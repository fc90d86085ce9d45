#pragma once

// Matroid partition by augmenting paths. Each block holds one independent
// set of its matroid; the partitioner grows the union one element at a time.

#include "perigid/gain_graph.hpp"

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace perigid::detail {

using Endpoints = std::vector<std::pair<VertexId, VertexId>>;

class Block {
public:
    virtual ~Block() = default;

    /// Called once per augmenting search; state may be cached per epoch.
    virtual void begin_search(int epoch) = 0;
    /// True if the block plus z stays independent. Otherwise appends (some
    /// superset of the not yet reported) elements y with B − y + z independent.
    /// Must not modify the independent set.
    virtual bool probe(EdgeId z, std::vector<EdgeId>& exchange) = 0;
    virtual void insert(EdgeId z) = 0;
    virtual void remove(EdgeId y) = 0;
    virtual std::vector<EdgeId> members() const = 0;
};

/// Graphic matroid on the endpoint pairs.
class ForestBlock final : public Block {
public:
    ForestBlock(int vertex_count, const Endpoints& ends);

    void begin_search(int epoch) override;
    bool probe(EdgeId z, std::vector<EdgeId>& exchange) override;
    void insert(EdgeId z) override;
    void remove(EdgeId y) override;
    std::vector<EdgeId> members() const override;

private:
    void rebuild();
    VertexId top(VertexId v);

    const Endpoints& ends_;
    std::vector<char> member_;
    std::vector<std::vector<std::pair<EdgeId, VertexId>>> adj_;
    bool dirty_ = true;
    std::vector<VertexId> root_, parent_;
    std::vector<EdgeId> parent_edge_;
    std::vector<int> depth_;
    // Tree edges already reported in this search are contracted.
    std::vector<VertexId> up_;
    std::vector<int> up_epoch_;
    int epoch_ = 0;
};

/// Edge sets admitting an orientation with in-degree at most limit[v].
class IndegreeBlock final : public Block {
public:
    IndegreeBlock(const Endpoints& ends, std::vector<int> limits);

    void begin_search(int epoch) override;
    bool probe(EdgeId z, std::vector<EdgeId>& exchange) override;
    void insert(EdgeId z) override;
    void remove(EdgeId y) override;
    std::vector<EdgeId> members() const override;

    /// Head of a member edge under the maintained orientation.
    VertexId head(EdgeId e) const { return head_[e]; }

private:
    VertexId other_end(EdgeId e, VertexId x) const;

    const Endpoints& ends_;
    std::vector<int> limits_;
    std::vector<VertexId> head_;
    std::vector<std::vector<EdgeId>> in_;
    std::vector<int> seen_;
    int stamp_ = 0;
    std::vector<int> dead_;
    int epoch_ = 0;
};

/// Any set of at most `rank` elements.
class UniformBlock final : public Block {
public:
    UniformBlock(std::size_t ground, std::size_t rank);

    void begin_search(int epoch) override;
    bool probe(EdgeId z, std::vector<EdgeId>& exchange) override;
    void insert(EdgeId z) override;
    void remove(EdgeId y) override;
    std::vector<EdgeId> members() const override;

private:
    std::size_t rank_;
    std::vector<char> member_;
    std::size_t size_ = 0;
    bool reported_ = false;
};

/// Linear independence of integer vectors over Q.
class LinearBlock final : public Block {
public:
    explicit LinearBlock(const std::vector<GainVector>& vectors);

    void begin_search(int) override {}
    bool probe(EdgeId z, std::vector<EdgeId>& exchange) override;
    void insert(EdgeId z) override;
    void remove(EdgeId y) override;
    std::vector<EdgeId> members() const override { return members_; }

private:
    std::size_t rank_with(EdgeId skip, EdgeId extra) const;

    const std::vector<GainVector>& vectors_;
    std::vector<EdgeId> members_;
};

class Partitioner {
public:
    Partitioner(std::size_t ground, std::vector<std::unique_ptr<Block>> blocks);

    /// Adds x to the union if possible, rearranging blocks along a shortest
    /// augmenting path. On failure closure() holds the searched elements.
    bool add(EdgeId x);

    /// Block index holding e, or −1.
    int owner(EdgeId e) const { return owner_[e]; }
    Block& block(std::size_t i) { return *blocks_[i]; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<EdgeId>& closure() const { return closure_; }

private:
    void augment(EdgeId sink, int block);

    std::vector<std::unique_ptr<Block>> blocks_;
    std::vector<int> owner_;
    std::vector<int> label_;
    std::vector<EdgeId> pred_;
    std::vector<EdgeId> closure_;
    std::vector<EdgeId> scratch_;
    EdgeId source_ = 0;
    int epoch_ = 0;
};

}  // namespace perigid::detail
