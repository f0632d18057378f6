#include "nds/presets.hpp"

#include <algorithm>
#include <fstream>

#include "nds/errors.hpp"

namespace nds {

namespace {

OpDesc make_op(std::string name, OpKind kind, int kernel, int dilation = 1) {
    return OpDesc{std::move(name), kind, kernel, dilation};
}

}  // namespace

OpDesc op_from_name(const std::string& name) {
    if (name == "identity") return make_op(name, OpKind::Identity, 1);
    if (name == "zero") return make_op(name, OpKind::Zero, 1);
    if (name == "conv1x1") return make_op(name, OpKind::Conv, 1);
    if (name == "conv3x3") return make_op(name, OpKind::Conv, 3);
    if (name == "sep3x3") return make_op(name, OpKind::SepConv, 3);
    if (name == "sep5x5") return make_op(name, OpKind::SepConv, 5);
    if (name == "sep7x7") return make_op(name, OpKind::SepConv, 7);
    if (name == "dil3x3") return make_op(name, OpKind::DilConv, 3, 2);
    if (name == "dilsep3x3") return make_op(name, OpKind::DilSepConv, 3, 2);
    if (name == "dilsep5x5") return make_op(name, OpKind::DilSepConv, 5, 2);
    if (name == "fact1x3") return make_op(name, OpKind::FactorizedConv, 3);
    if (name == "fact1x7") return make_op(name, OpKind::FactorizedConv, 7);
    if (name == "maxpool3x3") return make_op(name, OpKind::MaxPool, 3);
    if (name == "maxpool5x5") return make_op(name, OpKind::MaxPool, 5);
    if (name == "maxpool7x7") return make_op(name, OpKind::MaxPool, 7);
    if (name == "avgpool3x3") return make_op(name, OpKind::AvgPool, 3);
    throw InvalidConfigError("unknown op name: " + name);
}

OpSet opset_preset(const std::string& name) {
    auto build = [&name](std::initializer_list<const char*> ops) {
        OpSet set;
        set.name = name;
        for (const char* op : ops) set.ops.push_back(op_from_name(op));
        return set;
    };
    if (name == "nasnet")
        return build({"identity", "conv1x1", "conv3x3", "sep3x3", "sep5x5", "sep7x7", "dil3x3",
                      "fact1x3", "fact1x7", "maxpool3x3", "maxpool5x5", "maxpool7x7", "avgpool3x3"});
    if (name == "amoeba")
        return build({"identity", "sep3x3", "sep5x5", "sep7x7", "dilsep3x3", "fact1x7",
                      "maxpool3x3", "avgpool3x3"});
    if (name == "pnas")
        return build({"identity", "sep3x3", "sep5x5", "sep7x7", "dil3x3", "fact1x7",
                      "maxpool3x3", "avgpool3x3"});
    if (name == "enas") return build({"identity", "sep3x3", "sep5x5", "maxpool3x3", "avgpool3x3"});
    if (name == "darts")
        return build({"zero", "identity", "sep3x3", "sep5x5", "dilsep3x3", "dilsep5x5",
                      "maxpool3x3", "avgpool3x3"});
    throw InvalidConfigError("unknown op set preset: " + name);
}

namespace {

struct NasPresetInfo {
    const char* name;
    int num_nodes;
    OutputRule rule;
};

constexpr NasPresetInfo kNasPresets[] = {
    {"nasnet", 5, OutputRule::Loose},
    {"amoeba", 5, OutputRule::Loose},
    {"pnas", 5, OutputRule::All},
    {"enas", 5, OutputRule::Loose},
    {"darts", 4, OutputRule::All},
};

const EvalSettings kCifarEval{32, 10, StemKind::Cifar};
const EvalSettings kImageNetEval{224, 1000, StemKind::ImageNet};

StandardSpaceSpec standard_spec(const std::string& base) {
    StandardSpaceSpec spec;
    spec.num_stages = 3;
    if (base == "vanilla" || base == "resnet") {
        spec.family = base == "vanilla" ? Family::Vanilla : Family::ResNet;
        spec.depth_grid = log_grid(1, 24, 9);
        spec.width_grid = log_grid(16, 256, 12);
    } else if (base == "resnext-a") {
        spec.family = Family::ResNeXt;
        spec.depth_grid = log_grid(1, 16, 5);
        spec.width_grid = log_grid(16, 256, 5);
        spec.ratio_grid = log_grid(1, 4, 3);
        spec.group_grid = log_grid(1, 4, 3);
    } else if (base == "resnext-b") {
        spec.family = Family::ResNeXt;
        spec.depth_grid = log_grid(1, 16, 5);
        spec.width_grid = log_grid(64, 1024, 5);
        spec.ratio_grid = log_grid(1, 4, 3);
        spec.group_grid = log_grid(1, 16, 5);
    } else {
        throw InvalidConfigError("unknown standard space: " + base);
    }
    return spec;
}

NasSpaceSpec nas_spec(const std::string& base, bool imagenet) {
    for (const auto& info : kNasPresets) {
        if (base == info.name) {
            NasSpaceSpec spec;
            spec.opset = opset_preset(base);
            spec.num_nodes = info.num_nodes;
            spec.output_rule = info.rule;
            if (imagenet) {
                spec.widths = {32, 48, 64, 80, 96};
                spec.depths = {6, 10, 14, 18, 22};
            } else {
                spec.widths = {16, 24, 32};
                spec.depths = {4, 8, 12, 16, 20};
            }
            return spec;
        }
    }
    throw InvalidConfigError("unknown NAS space: " + base);
}

}  // namespace

const std::vector<std::string>& space_preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> list;
        for (const char* base : {"vanilla", "resnet", "resnext-a", "resnext-b", "nasnet", "amoeba",
                                 "pnas", "enas", "darts"}) {
            list.emplace_back(base);
            list.emplace_back(std::string(base) + "-in");
        }
        return list;
    }();
    return names;
}

bool is_space_preset(const std::string& name) {
    const auto& names = space_preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

DesignSpace space_preset(const std::string& name) {
    std::string base = name;
    bool imagenet = false;
    if (base.size() > 3 && base.ends_with("-in")) {
        base = base.substr(0, base.size() - 3);
        imagenet = true;
    }
    DesignSpace space;
    space.name = name;
    space.eval = imagenet ? kImageNetEval : kCifarEval;
    for (const auto& info : kNasPresets) {
        if (base == info.name) {
            space.spec = nas_spec(base, imagenet);
            return space;
        }
    }
    space.spec = standard_spec(base);
    return space;
}

ComplexityCeiling ceiling_preset(const std::string& name) {
    // Reference-model values computed under the accounting convention in
    // complexity.hpp; the ImageNet bounds are the mobile-regime limits.
    if (name == "r56-flops") return {Metric::Flops, 127'844'992};
    if (name == "r56-params") return {Metric::Params, 871'994};
    if (name == "in-flops") return {Metric::Flops, 600'000'000};
    if (name == "in-params") return {Metric::Params, 6'000'000};
    throw InvalidConfigError("unknown ceiling preset: " + name);
}

ComplexityCeiling parse_ceiling(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return ceiling_preset(text);
    const Metric metric = metric_from_string(text.substr(0, colon));
    const std::string value = text.substr(colon + 1);
    try {
        const long long limit = std::stoll(value);
        if (limit <= 0) throw InvalidConfigError("ceiling limit must be positive");
        return {metric, static_cast<std::uint64_t>(limit)};
    } catch (const std::logic_error&) {
        throw InvalidConfigError("bad ceiling limit: " + value);
    }
}

namespace {

HyperGrid grid_from_json(const nlohmann::json& j) {
    if (j.contains("values")) return explicit_grid(j.at("values").get<std::vector<int>>());
    return log_grid(j.at("lo").get<int>(), j.at("hi").get<int>(), j.at("count").get<int>());
}

nlohmann::json grid_to_json(const HyperGrid& g) {
    return nlohmann::json{{"values", g.values}};
}

EvalSettings eval_from_json(const nlohmann::json& j) {
    EvalSettings eval;
    if (j.contains("resolution")) eval.resolution = j.at("resolution").get<int>();
    if (j.contains("classes")) eval.num_classes = j.at("classes").get<int>();
    if (j.contains("stem")) eval.stem = stem_from_string(j.at("stem").get<std::string>());
    return eval;
}

OpSet opset_from_json(const nlohmann::json& j) {
    if (j.contains("ops")) {
        OpSet set;
        set.name = j.value("opset", std::string("custom"));
        for (const auto& op : j.at("ops")) set.ops.push_back(op_from_name(op.get<std::string>()));
        set.validate();
        return set;
    }
    return opset_preset(j.at("opset").get<std::string>());
}

}  // namespace

DesignSpace space_from_json(const nlohmann::json& j) {
    try {
        DesignSpace space;
        space.name = j.value("name", std::string("custom"));
        if (j.contains("eval")) space.eval = eval_from_json(j.at("eval"));
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "standard") {
            StandardSpaceSpec spec;
            spec.family = family_from_string(j.at("family").get<std::string>());
            spec.num_stages = j.value("stages", 3);
            spec.depth_grid = grid_from_json(j.at("depth"));
            spec.width_grid = grid_from_json(j.at("width"));
            if (j.contains("ratio")) spec.ratio_grid = grid_from_json(j.at("ratio"));
            if (j.contains("groups")) spec.group_grid = grid_from_json(j.at("groups"));
            spec.validate();
            space.spec = std::move(spec);
        } else if (kind == "nas") {
            NasSpaceSpec spec;
            spec.opset = opset_from_json(j);
            spec.num_nodes = j.at("nodes").get<int>();
            spec.output_rule = output_rule_from_char(j.at("output").get<std::string>().at(0));
            spec.widths = j.at("widths").get<std::vector<int>>();
            spec.depths = j.at("depths").get<std::vector<int>>();
            spec.validate();
            space.spec = std::move(spec);
        } else {
            throw InvalidConfigError("unknown space kind: " + kind);
        }
        return space;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad space config: ") + e.what());
    }
}

nlohmann::json space_to_json(const DesignSpace& space) {
    nlohmann::json j;
    j["name"] = space.name;
    j["eval"] = {{"resolution", space.eval.resolution},
                 {"classes", space.eval.num_classes},
                 {"stem", to_string(space.eval.stem)}};
    if (const auto* std_spec = std::get_if<StandardSpaceSpec>(&space.spec)) {
        j["kind"] = "standard";
        j["family"] = to_string(std_spec->family);
        j["stages"] = std_spec->num_stages;
        j["depth"] = grid_to_json(std_spec->depth_grid);
        j["width"] = grid_to_json(std_spec->width_grid);
        if (std_spec->ratio_grid) j["ratio"] = grid_to_json(*std_spec->ratio_grid);
        if (std_spec->group_grid) j["groups"] = grid_to_json(*std_spec->group_grid);
    } else {
        const auto& nas = std::get<NasSpaceSpec>(space.spec);
        j["kind"] = "nas";
        if (nas.opset.name == "custom") {
            std::vector<std::string> names;
            for (const auto& op : nas.opset.ops) names.push_back(op.name);
            j["ops"] = names;
        }
        j["opset"] = nas.opset.name;
        j["nodes"] = nas.num_nodes;
        j["output"] = std::string(1, to_char(nas.output_rule));
        j["widths"] = nas.widths;
        j["depths"] = nas.depths;
    }
    return j;
}

DesignSpace load_space(const std::string& name_or_path) {
    if (is_space_preset(name_or_path)) return space_preset(name_or_path);
    std::ifstream in(name_or_path);
    if (!in)
        throw InvalidConfigError("not a space preset and not a readable config file: " + name_or_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad space config " + name_or_path + ": " + e.what());
    }
    return space_from_json(j);
}

mpz_class design_space_size(const DesignSpace& space, bool full) {
    if (const auto* std_spec = std::get_if<StandardSpaceSpec>(&space.spec)) return space_size(*std_spec);
    const auto& nas = std::get<NasSpaceSpec>(space.spec);
    if (full) return nas_space_size(nas);
    return cell_count(nas.opset.size(), nas.num_nodes);
}

}  // namespace nds
