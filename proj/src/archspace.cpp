#include "nds/archspace.hpp"

#include <algorithm>
#include <cmath>

#include "nds/errors.hpp"

namespace nds {

std::string to_string(Family f) {
    switch (f) {
        case Family::Vanilla: return "vanilla";
        case Family::ResNet: return "resnet";
        case Family::ResNeXt: return "resnext";
    }
    throw InvalidConfigError("unknown family enum value");
}

Family family_from_string(const std::string& s) {
    if (s == "vanilla") return Family::Vanilla;
    if (s == "resnet") return Family::ResNet;
    if (s == "resnext") return Family::ResNeXt;
    throw InvalidConfigError("unknown family: " + s);
}

bool HyperGrid::contains(int v) const {
    return std::binary_search(values.begin(), values.end(), v);
}

void HyperGrid::validate() const {
    if (values.empty()) throw InvalidConfigError("grid has no values");
    if (values.front() != lo || values.back() != hi)
        throw InvalidConfigError("grid endpoints do not match lo/hi");
    int prev = 0;
    for (int v : values) {
        if (v <= prev) throw InvalidConfigError("grid values must be strictly increasing and positive");
        prev = v;
    }
}

HyperGrid log_grid(int lo, int hi, int count) {
    if (lo < 1 || hi < lo) throw InvalidConfigError("log_grid: need 1 <= lo <= hi");
    if (count < 1) throw InvalidConfigError("log_grid: count must be positive");
    if (count == 1 && lo != hi) throw InvalidConfigError("log_grid: count == 1 requires lo == hi");
    if (static_cast<long long>(hi) - lo + 1 < count)
        throw InfeasibleGridError("log_grid: [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                  "] holds fewer than " + std::to_string(count) + " integers");

    HyperGrid g{lo, hi, {}};
    g.values.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        g.values.push_back(lo);
        return g;
    }
    const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
    for (int i = 0; i < count; ++i) {
        int v;
        if (i == 0) {
            v = lo;
        } else if (i == count - 1) {
            v = hi;
        } else {
            const double raw = lo * std::pow(ratio, static_cast<double>(i) / (count - 1));
            v = static_cast<int>(std::llround(raw));
        }
        if (!g.values.empty()) v = std::max(v, g.values.back() + 1);
        g.values.push_back(v);
    }
    // Repair can only overrun hi if the interval was too small, which the
    // precondition above already rejects; keep the check as a hard stop.
    if (g.values.back() != hi)
        throw InfeasibleGridError("log_grid: collision repair overran hi");
    g.validate();
    return g;
}

HyperGrid explicit_grid(std::vector<int> values) {
    if (values.empty()) throw InvalidConfigError("explicit_grid: no values");
    HyperGrid g{values.front(), values.back(), std::move(values)};
    g.validate();
    return g;
}

void StandardSpaceSpec::validate() const {
    if (num_stages < 1) throw InvalidConfigError("spec: num_stages must be positive");
    depth_grid.validate();
    width_grid.validate();
    if (ratio_grid.has_value() != group_grid.has_value())
        throw InvalidConfigError("spec: ratio and group grids must be both present or both absent");
    if (family == Family::ResNeXt) {
        if (!ratio_grid) throw InvalidConfigError("spec: ResNeXt requires ratio and group grids");
        ratio_grid->validate();
        group_grid->validate();
    } else if (ratio_grid) {
        throw InvalidConfigError("spec: ratio/group grids are only valid for ResNeXt");
    }
}

mpz_class space_size(const StandardSpaceSpec& spec) {
    spec.validate();
    mpz_class per_stage = spec.depth_grid.count();
    per_stage *= spec.width_grid.count();
    if (spec.ratio_grid) per_stage *= spec.ratio_grid->count();
    if (spec.group_grid) per_stage *= spec.group_grid->count();
    mpz_class total = 1;
    for (int i = 0; i < spec.num_stages; ++i) total *= per_stage;
    return total;
}

namespace {

int draw(const HyperGrid& g, Rng& rng) {
    return g.values[rng.uniform_index(g.values.size())];
}

}  // namespace

ArchConfig sample_standard(const StandardSpaceSpec& spec, Rng& rng) {
    spec.validate();
    ArchConfig cfg;
    cfg.family = spec.family;
    for (int i = 0; i < spec.num_stages; ++i) {
        cfg.depths.push_back(draw(spec.depth_grid, rng));
        cfg.widths.push_back(draw(spec.width_grid, rng));
        if (spec.family == Family::ResNeXt) {
            cfg.ratios.push_back(draw(*spec.ratio_grid, rng));
            cfg.groups.push_back(draw(*spec.group_grid, rng));
        }
    }
    return cfg;
}

bool config_in_space(const ArchConfig& cfg, const StandardSpaceSpec& spec) {
    const auto stages = static_cast<std::size_t>(spec.num_stages);
    if (cfg.family != spec.family) return false;
    if (cfg.depths.size() != stages || cfg.widths.size() != stages) return false;
    for (int d : cfg.depths)
        if (!spec.depth_grid.contains(d)) return false;
    for (int w : cfg.widths)
        if (!spec.width_grid.contains(w)) return false;
    if (spec.family == Family::ResNeXt) {
        if (cfg.ratios.size() != stages || cfg.groups.size() != stages) return false;
        for (int r : cfg.ratios)
            if (!spec.ratio_grid->contains(r)) return false;
        for (int g : cfg.groups)
            if (!spec.group_grid->contains(g)) return false;
    } else if (!cfg.ratios.empty() || !cfg.groups.empty()) {
        return false;
    }
    return true;
}

}  // namespace nds
