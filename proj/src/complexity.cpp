#include "nds/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "nds/errors.hpp"

namespace nds {

std::string to_string(Metric m) { return m == Metric::Flops ? "flops" : "params"; }

Metric metric_from_string(const std::string& s) {
    if (s == "flops") return Metric::Flops;
    if (s == "params") return Metric::Params;
    throw InvalidConfigError("unknown metric: " + s);
}

std::string to_string(StemKind s) { return s == StemKind::Cifar ? "cifar" : "imagenet"; }

StemKind stem_from_string(const std::string& s) {
    if (s == "cifar") return StemKind::Cifar;
    if (s == "imagenet") return StemKind::ImageNet;
    throw InvalidConfigError("unknown stem: " + s);
}

int bottleneck_width(int width, int ratio, int groups) {
    if (width < 1 || ratio < 1 || groups < 1)
        throw InvalidConfigError("bottleneck_width: width, ratio, groups must be positive");
    const int rounded = static_cast<int>(std::llround(static_cast<double>(width) / ratio));
    const int base = std::max(rounded, groups);
    const int b = (base + groups - 1) / groups * groups;
    if (b % groups != 0) throw InvalidConfigError("bottleneck width not divisible by groups");
    return b;
}

namespace {

constexpr int kStemWidth = 16;

// Accumulates one named segment of conv / fc layers.
struct SegmentAcc {
    Segment seg;

    explicit SegmentAcc(std::string name) { seg.name = std::move(name); }

    void conv(int c_in, int c_out, int k, int res_out, int groups = 1) {
        const auto weights = static_cast<std::uint64_t>(k) * k * c_in * c_out / groups;
        seg.params += weights;
        seg.flops += weights * static_cast<std::uint64_t>(res_out) * res_out;
    }

    void fc(int c_in, int c_out) {
        seg.flops += static_cast<std::uint64_t>(c_in) * c_out;
        seg.params += static_cast<std::uint64_t>(c_in) * c_out + static_cast<std::uint64_t>(c_out);
    }
};

struct StemResult {
    int width = 0;
    int resolution = 0;
};

// The CIFAR stem is a single full-resolution 3x3 conv. The ImageNet stem is
// three stride-2 3x3 convs (3 -> w/2 -> w -> w), leaving features at 1/8th
// resolution.
StemResult add_stem(std::vector<Segment>& segments, StemKind stem, int resolution, int width) {
    SegmentAcc acc("stem");
    StemResult out;
    if (stem == StemKind::Cifar) {
        acc.conv(3, width, 3, resolution);
        out = {width, resolution};
    } else {
        if (width % 2 != 0) throw InvalidConfigError("imagenet stem requires an even width");
        if (resolution % 8 != 0) throw InvalidConfigError("imagenet stem requires resolution divisible by 8");
        acc.conv(3, width / 2, 3, resolution / 2);
        acc.conv(width / 2, width, 3, resolution / 4);
        acc.conv(width, width, 3, resolution / 8);
        out = {width, resolution / 8};
    }
    segments.push_back(std::move(acc.seg));
    return out;
}

ComplexityReport finish(std::vector<Segment> segments) {
    ComplexityReport report;
    report.segments = std::move(segments);
    for (const auto& s : report.segments) {
        report.flops += s.flops;
        report.params += s.params;
    }
    return report;
}

}  // namespace

ComplexityReport standard_complexity(const ArchConfig& cfg, int input_resolution, int num_classes,
                                     StemKind stem) {
    const auto stages = cfg.depths.size();
    if (stages == 0 || cfg.widths.size() != stages)
        throw InvalidConfigError("standard_complexity: config needs matching depth/width lists");
    const bool grouped = cfg.family == Family::ResNeXt;
    if (grouped && (cfg.ratios.size() != stages || cfg.groups.size() != stages))
        throw InvalidConfigError("standard_complexity: ResNeXt config needs ratio/group lists");
    if (input_resolution < 4 || input_resolution % 4 != 0)
        throw InvalidConfigError("standard_complexity: resolution must be divisible by 4");
    if (num_classes < 1) throw InvalidConfigError("standard_complexity: num_classes must be positive");
    for (std::size_t i = 0; i < stages; ++i) {
        if (cfg.depths[i] < 1 || cfg.widths[i] < 1)
            throw InvalidConfigError("standard_complexity: depths and widths must be positive");
    }

    std::vector<Segment> segments;
    const StemResult stem_out = add_stem(segments, stem, input_resolution, kStemWidth);

    int w_in = stem_out.width;
    int res = stem_out.resolution;
    for (std::size_t i = 0; i < stages; ++i) {
        SegmentAcc acc("stage" + std::to_string(i + 1));
        const int w = cfg.widths[i];
        const int stride = i == 0 ? 1 : 2;
        const int res_in = res;
        res /= stride;
        if (res < 1) throw InvalidConfigError("standard_complexity: resolution exhausted by downsampling");
        for (int b = 0; b < cfg.depths[i]; ++b) {
            const int c_in = b == 0 ? w_in : w;
            const int s = b == 0 ? stride : 1;
            switch (cfg.family) {
                case Family::Vanilla:
                    acc.conv(c_in, w, 3, res);
                    acc.conv(w, w, 3, res);
                    break;
                case Family::ResNet:
                    acc.conv(c_in, w, 3, res);
                    acc.conv(w, w, 3, res);
                    if (c_in != w || s != 1) acc.conv(c_in, w, 3, res);  // 3x3 projection shortcut
                    break;
                case Family::ResNeXt: {
                    const int g = cfg.groups[i];
                    const int bw = bottleneck_width(w, cfg.ratios[i], g);
                    acc.conv(c_in, bw, 1, b == 0 ? res_in : res);  // 1x1 runs before the stride
                    acc.conv(bw, bw, 3, res, g);
                    acc.conv(bw, w, 1, res);
                    if (c_in != w || s != 1) acc.conv(c_in, w, 1, res);
                    break;
                }
            }
        }
        segments.push_back(std::move(acc.seg));
        w_in = w;
    }

    SegmentAcc head("head");
    head.fc(w_in, num_classes);
    segments.push_back(std::move(head.seg));
    return finish(std::move(segments));
}

std::pair<std::uint64_t, std::uint64_t> op_cost(const OpDesc& op, int width, int resolution) {
    const auto c = static_cast<std::uint64_t>(width);
    const auto k = static_cast<std::uint64_t>(op.kernel);
    const auto r2 = static_cast<std::uint64_t>(resolution) * resolution;
    std::uint64_t weights = 0;
    switch (op.kind) {
        case OpKind::Identity:
        case OpKind::Zero:
        case OpKind::MaxPool:
        case OpKind::AvgPool:
            return {0, 0};
        case OpKind::Conv:
        case OpKind::DilConv:
            weights = k * k * c * c;
            break;
        case OpKind::FactorizedConv:
            weights = 2 * k * c * c;
            break;
        case OpKind::SepConv:
        case OpKind::DilSepConv:
            weights = k * k * c + c * c;  // depthwise + pointwise
            break;
        default:
            throw UnknownOpError("no cost formula registered for op " + op.name);
    }
    return {weights * r2, weights};
}

ComplexityReport nas_complexity(const NasNetworkConfig& net, int input_resolution, int num_classes,
                                StemKind stem) {
    net.validate();
    if (num_classes < 1) throw InvalidConfigError("nas_complexity: num_classes must be positive");
    if (input_resolution < 1) throw InvalidConfigError("nas_complexity: resolution must be positive");

    std::vector<Segment> segments;
    const StemResult stem_out = add_stem(segments, stem, input_resolution, net.init_width);

    // Both inputs of the first cell are the stem; afterwards they are the two
    // previous cell outputs.
    int prev_prev_width = stem_out.width;
    int prev_width = stem_out.width;
    int res = stem_out.resolution;
    int mult = 1;
    for (int i = 1; i <= net.depth; ++i) {
        const bool reduce = net.is_reduction(i);
        if (reduce) {
            mult *= 2;
            res /= 2;
            if (res < 1) throw InvalidConfigError("nas_complexity: resolution exhausted by reductions");
        }
        const int c = net.init_width * mult;
        const CellGenotype& cell = reduce ? net.reduction_cell : net.normal_cell;

        SegmentAcc acc("cell" + std::to_string(i));
        acc.conv(prev_prev_width, c, 1, res);  // input projections (factorized
        acc.conv(prev_width, c, 1, res);       //  stride-2 form costs the same)
        for (const auto& node : cell.nodes) {
            for (int op : {node.op_a, node.op_b}) {
                const auto [fl, pa] = op_cost(net.opset.ops[static_cast<std::size_t>(op)], c, res);
                acc.seg.flops += fl;
                acc.seg.params += pa;
            }
        }
        segments.push_back(std::move(acc.seg));

        const int out_width = static_cast<int>(loose_nodes(cell).size()) * c;
        prev_prev_width = prev_width;
        prev_width = out_width;
    }

    SegmentAcc head("head");
    head.fc(prev_width, num_classes);
    segments.push_back(std::move(head.seg));
    return finish(std::move(segments));
}

bool within_ceiling(const ComplexityReport& report, const ComplexityCeiling& ceiling) {
    return report.value(ceiling.metric) < ceiling.limit;
}

}  // namespace nds
