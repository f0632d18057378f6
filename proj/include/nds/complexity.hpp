#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nds/archspace.hpp"
#include "nds/nascell.hpp"

namespace nds {

// Complexity accounting
// ---------------------
// flops are multiply-adds of convolutions and the final fully connected
// layer, counted at each conv's output resolution; batch norm, activations,
// pooling, and elementwise additions are free. Conv parameters carry no bias
// (batch norm follows every conv); the fully connected layer keeps its bias.
// Residual projections in the basic-block families are 3x3 convs, matching
// the all-3x3 template; ResNeXt bottleneck blocks keep the usual 1x1
// projection.

enum class Metric { Flops, Params };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

enum class StemKind { Cifar, ImageNet };

std::string to_string(StemKind s);
StemKind stem_from_string(const std::string& s);

struct Segment {
    std::string name;
    std::uint64_t flops = 0;
    std::uint64_t params = 0;
};

struct ComplexityReport {
    std::uint64_t flops = 0;
    std::uint64_t params = 0;
    std::vector<Segment> segments;

    std::uint64_t value(Metric m) const { return m == Metric::Flops ? flops : params; }
};

// Strict upper bound on one complexity metric.
struct ComplexityCeiling {
    Metric metric = Metric::Flops;
    std::uint64_t limit = 0;
};

// Per-stage ResNeXt bottleneck width: round(width / ratio), then rounded up
// to the nearest multiple of `groups` (minimum `groups`).
int bottleneck_width(int width, int ratio, int groups);

// flop/param cost of one cell op at width c and feature resolution r.
std::pair<std::uint64_t, std::uint64_t> op_cost(const OpDesc& op, int width, int resolution);

// Analytic complexity of a standard-family network under the stem / three
// stages / head template. Stage i runs at resolution res / 2^(i-1) (after
// the stem) with width w_i; stages 2+ downsample in their first block.
ComplexityReport standard_complexity(const ArchConfig& cfg, int input_resolution, int num_classes,
                                     StemKind stem = StemKind::Cifar);

// Analytic complexity of a NAS network: stem, `depth` cells (each cell's two
// inputs pass through counted 1x1 projections to the cell width; reductions
// use stride-2 factorized projections), and the classifier head.
ComplexityReport nas_complexity(const NasNetworkConfig& net, int input_resolution, int num_classes,
                                StemKind stem = StemKind::Cifar);

// True iff the report's metric value is strictly below the ceiling.
bool within_ceiling(const ComplexityReport& report, const ComplexityCeiling& ceiling);

}  // namespace nds
