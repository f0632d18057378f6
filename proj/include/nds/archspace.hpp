#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nds/rng.hpp"

namespace nds {

enum class Family { Vanilla, ResNet, ResNeXt };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

// Ordered set of allowable integer values for one hyperparameter, spaced
// about evenly in log space between lo and hi (both included).
struct HyperGrid {
    int lo = 0;
    int hi = 0;
    std::vector<int> values;

    int count() const { return static_cast<int>(values.size()); }
    bool contains(int v) const;
    void validate() const;  // throws InvalidConfigError
};

// Grid of `count` strictly increasing integers: nearest-integer rounding of
// the geometric sequence lo*(hi/lo)^(i/(count-1)). Rounding collisions are
// repaired by bumping the later value up to the smallest unused integer,
// propagating rightward, so the result always has exactly `count` members.
HyperGrid log_grid(int lo, int hi, int count);

// Grid from an explicit value list (config override).
HyperGrid explicit_grid(std::vector<int> values);

// Parameterization of one standard model family: per-stage depth and width
// grids, plus bottleneck ratio and group grids for ResNeXt.
struct StandardSpaceSpec {
    Family family = Family::ResNet;
    int num_stages = 3;
    HyperGrid depth_grid;
    HyperGrid width_grid;
    std::optional<HyperGrid> ratio_grid;  // present iff family == ResNeXt
    std::optional<HyperGrid> group_grid;  // present iff family == ResNeXt

    void validate() const;
};

// One concrete architecture. Stage i runs d_i blocks at w_i output channels;
// ResNeXt additionally carries the per-stage bottleneck ratio and group count.
struct ArchConfig {
    Family family = Family::ResNet;
    std::vector<int> depths;
    std::vector<int> widths;
    std::vector<int> ratios;  // empty unless ResNeXt
    std::vector<int> groups;  // empty unless ResNeXt

    bool operator==(const ArchConfig&) const = default;
};

// Exact number of distinct architectures: the product over stages of the
// per-stage choice counts.
mpz_class space_size(const StandardSpaceSpec& spec);

// Every per-stage hyperparameter drawn independently and uniformly from its
// grid. Deterministic given the generator state. Draw order per stage:
// depth, width, then ratio and groups for ResNeXt.
ArchConfig sample_standard(const StandardSpaceSpec& spec, Rng& rng);

// Membership check: every field of cfg lies in the corresponding grid.
bool config_in_space(const ArchConfig& cfg, const StandardSpaceSpec& spec);

}  // namespace nds
