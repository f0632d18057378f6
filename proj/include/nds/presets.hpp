#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nds/archspace.hpp"
#include "nds/complexity.hpp"
#include "nds/nascell.hpp"

namespace nds {

// Evaluation context a design space carries along: it fixes how sampled
// architectures are costed (and later trained).
struct EvalSettings {
    int resolution = 32;
    int num_classes = 10;
    StemKind stem = StemKind::Cifar;

    bool operator==(const EvalSettings&) const = default;
};

// A named design space: either a standard-family parameterization or a NAS
// cell structure, plus its evaluation context.
struct DesignSpace {
    std::string name;
    std::variant<StandardSpaceSpec, NasSpaceSpec> spec;
    EvalSettings eval;

    bool is_nas() const { return std::holds_alternative<NasSpaceSpec>(spec); }
};

// Op descriptor by name, e.g. "sep3x3", "dilsep5x5", "fact1x7", "maxpool3x3".
OpDesc op_from_name(const std::string& name);

// Built-in op inventories: nasnet (13 ops), amoeba (8), pnas (8), enas (5),
// darts (8). Inventories follow the respective source systems and are
// overridable through space configs.
OpSet opset_preset(const std::string& name);

const std::vector<std::string>& space_preset_names();
bool is_space_preset(const std::string& name);

// Built-in spaces: vanilla, resnet, resnext-a, resnext-b and their
// -in variants, plus the five NAS cell spaces (nasnet, amoeba, pnas, enas,
// darts) and their -in variants.
DesignSpace space_preset(const std::string& name);

// Named ceilings: r56-flops, r56-params (exact computed reference values),
// in-flops (0.6 B), in-params (6 M).
ComplexityCeiling ceiling_preset(const std::string& name);

// Parses "name", "flops:<limit>", or "params:<limit>".
ComplexityCeiling parse_ceiling(const std::string& text);

// Config document round-trip. See README for the schema.
DesignSpace space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const DesignSpace& space);

// Preset name or path to a JSON config file.
DesignSpace load_space(const std::string& name_or_path);

// Exact cardinality reported by the size command: the full grid product for
// standard spaces, the cell count for NAS spaces (pass full = true to count
// whole networks instead of cells).
mpz_class design_space_size(const DesignSpace& space, bool full = false);

}  // namespace nds
