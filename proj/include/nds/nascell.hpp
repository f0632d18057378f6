#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "nds/rng.hpp"

namespace nds {

enum class OpKind {
    Identity,
    Zero,
    Conv,            // full k x k convolution
    FactorizedConv,  // 1 x k followed by k x 1
    SepConv,         // depthwise k x k + 1 x 1 pointwise
    DilSepConv,      // dilated depthwise + 1 x 1 pointwise
    DilConv,         // full k x k convolution with dilation
    MaxPool,
    AvgPool,
};

// One candidate op: the kind tag plus the kernel/dilation metadata the
// complexity accounting needs.
struct OpDesc {
    std::string name;  // e.g. "sep3x3", "fact1x7", "maxpool3x3"
    OpKind kind = OpKind::Identity;
    int kernel = 1;
    int dilation = 1;

    bool operator==(const OpDesc&) const = default;
};

struct OpSet {
    std::string name;  // nasnet | amoeba | pnas | enas | darts | custom
    std::vector<OpDesc> ops;

    int size() const { return static_cast<int>(ops.size()); }
    void validate() const;
};

enum class OutputRule { All, Loose };

char to_char(OutputRule r);
OutputRule output_rule_from_char(char c);

// Node j (1-based) picks two inputs, each from j+1 candidates: indices 0 and
// 1 are the two cell inputs, index i in [2, j] names prior node i-1. One op
// is applied to each input and the two results are summed.
struct NodeSpec {
    int input_a = 0;
    int op_a = 0;
    int input_b = 0;
    int op_b = 0;

    bool operator==(const NodeSpec&) const = default;
};

// A sampled cell DAG. The cell output concatenates all nodes (rule All) or
// only the loose ones (rule Loose).
struct CellGenotype {
    std::vector<NodeSpec> nodes;
    OutputRule output_rule = OutputRule::All;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    void validate(int num_ops) const;

    // Compact text form: "<rule>;a:opa,b:opb;..." e.g. "A;0:2,1:3;2:0,0:1".
    std::string to_string() const;
    static CellGenotype parse(const std::string& s);

    bool operator==(const CellGenotype&) const = default;
};

// Exact o^(2k) * ((k+1)!)^2 cells with k nodes and o candidate ops.
mpz_class cell_count(int num_ops, int num_nodes);

// Rounds an exact count to integer billions, half away from zero.
std::uint64_t to_billions(const mpz_class& count);

// Step-by-step uniform sampling: for node j in order, the two input indices
// are drawn independently and uniformly over the j+1 candidates, then the
// two op indices over the op set. Deterministic given the generator state.
CellGenotype sample_cell(const OpSet& opset, int num_nodes, OutputRule rule, Rng& rng);

// 1-based indices of nodes never consumed as an input of a later node.
// Under OutputRule::All every node is returned. Never empty: the last node
// cannot feed anything.
std::vector<int> loose_nodes(const CellGenotype& g);

// Positions (1-based) of the three reduction cells for a network of `depth`
// cells: even quarters ceil(d/4) * {1, 2, 3}. Throws InvalidConfigError for
// depths that cannot hold the placement.
std::vector<int> reduction_positions(int depth);

// A full network: two independently sampled cells stacked `depth` times with
// three evenly placed reductions, each of which halves resolution and
// doubles width.
struct NasNetworkConfig {
    OpSet opset;
    CellGenotype normal_cell;
    CellGenotype reduction_cell;
    int init_width = 16;
    int depth = 8;
    std::vector<int> reduction_positions;

    void validate() const;
    bool is_reduction(int cell_index) const;  // 1-based

    bool operator==(const NasNetworkConfig&) const = default;
};

// Parameterization of a NAS design space: a cell structure plus the allowed
// initial widths and depths.
struct NasSpaceSpec {
    OpSet opset;
    int num_nodes = 5;
    OutputRule output_rule = OutputRule::Loose;
    std::vector<int> widths;
    std::vector<int> depths;

    void validate() const;
};

// Normal cell, reduction cell, width, depth -- in that draw order.
NasNetworkConfig sample_nas_network(const NasSpaceSpec& spec, Rng& rng);

// Total networks in the space: cells^2 * |widths| * |depths|.
mpz_class nas_space_size(const NasSpaceSpec& spec);

}  // namespace nds
