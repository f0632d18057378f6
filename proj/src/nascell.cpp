#include "nds/nascell.hpp"

#include <algorithm>
#include <sstream>

#include "nds/errors.hpp"

namespace nds {

void OpSet::validate() const {
    if (ops.empty()) throw InvalidConfigError("op set is empty");
    for (const auto& op : ops) {
        if (op.kernel < 1 || op.dilation < 1)
            throw InvalidConfigError("op " + op.name + ": kernel and dilation must be positive");
    }
}

char to_char(OutputRule r) { return r == OutputRule::All ? 'A' : 'L'; }

OutputRule output_rule_from_char(char c) {
    if (c == 'A') return OutputRule::All;
    if (c == 'L') return OutputRule::Loose;
    throw InvalidConfigError(std::string("unknown output rule: ") + c);
}

void CellGenotype::validate(int num_ops) const {
    if (nodes.empty()) throw InvalidConfigError("genotype has no nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int j = static_cast<int>(i) + 1;  // 1-based node number
        const auto& n = nodes[i];
        for (int input : {n.input_a, n.input_b}) {
            if (input < 0 || input > j)
                throw InvalidConfigError("node " + std::to_string(j) + ": input index out of range");
        }
        for (int op : {n.op_a, n.op_b}) {
            if (op < 0 || op >= num_ops)
                throw InvalidConfigError("node " + std::to_string(j) + ": op index out of range");
        }
    }
}

std::string CellGenotype::to_string() const {
    std::ostringstream out;
    out << to_char(output_rule);
    for (const auto& n : nodes)
        out << ';' << n.input_a << ':' << n.op_a << ',' << n.input_b << ':' << n.op_b;
    return out.str();
}

CellGenotype CellGenotype::parse(const std::string& s) {
    if (s.empty()) throw SchemaError("genotype string is empty");
    CellGenotype g;
    g.output_rule = output_rule_from_char(s[0]);
    std::size_t pos = 1;
    while (pos < s.size()) {
        if (s[pos] != ';') throw SchemaError("genotype: expected ';' in \"" + s + "\"");
        ++pos;
        NodeSpec n;
        const int fields = std::sscanf(s.c_str() + pos, "%d:%d,%d:%d", &n.input_a, &n.op_a, &n.input_b, &n.op_b);
        if (fields != 4) throw SchemaError("genotype: bad node entry in \"" + s + "\"");
        g.nodes.push_back(n);
        pos = s.find(';', pos);
        if (pos == std::string::npos) break;
    }
    if (g.nodes.empty()) throw SchemaError("genotype: no nodes in \"" + s + "\"");
    return g;
}

mpz_class cell_count(int num_ops, int num_nodes) {
    if (num_ops < 1 || num_nodes < 1)
        throw InvalidConfigError("cell_count: num_ops and num_nodes must be positive");
    mpz_class ops_term;
    mpz_ui_pow_ui(ops_term.get_mpz_t(), static_cast<unsigned long>(num_ops),
                  2UL * static_cast<unsigned long>(num_nodes));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(num_nodes) + 1);
    return ops_term * fact * fact;
}

std::uint64_t to_billions(const mpz_class& count) {
    mpz_class rounded = (count + 500'000'000) / 1'000'000'000;
    if (!rounded.fits_ulong_p())
        throw InvalidConfigError("count too large to round to 64-bit billions");
    return static_cast<std::uint64_t>(rounded.get_ui());
}

CellGenotype sample_cell(const OpSet& opset, int num_nodes, OutputRule rule, Rng& rng) {
    opset.validate();
    if (num_nodes < 1) throw InvalidConfigError("sample_cell: num_nodes must be positive");
    const auto num_ops = static_cast<std::uint64_t>(opset.size());
    CellGenotype g;
    g.output_rule = rule;
    g.nodes.reserve(static_cast<std::size_t>(num_nodes));
    for (int j = 1; j <= num_nodes; ++j) {
        const auto choices = static_cast<std::uint64_t>(j) + 1;
        NodeSpec n;
        n.input_a = static_cast<int>(rng.uniform_index(choices));
        n.input_b = static_cast<int>(rng.uniform_index(choices));
        n.op_a = static_cast<int>(rng.uniform_index(num_ops));
        n.op_b = static_cast<int>(rng.uniform_index(num_ops));
        g.nodes.push_back(n);
    }
    return g;
}

std::vector<int> loose_nodes(const CellGenotype& g) {
    const int k = g.num_nodes();
    std::vector<int> result;
    if (g.output_rule == OutputRule::All) {
        for (int j = 1; j <= k; ++j) result.push_back(j);
        return result;
    }
    std::vector<bool> consumed(static_cast<std::size_t>(k) + 1, false);
    for (const auto& n : g.nodes) {
        for (int input : {n.input_a, n.input_b}) {
            if (input >= 2) consumed[static_cast<std::size_t>(input) - 1] = true;
        }
    }
    for (int j = 1; j <= k; ++j)
        if (!consumed[static_cast<std::size_t>(j)]) result.push_back(j);
    return result;
}

std::vector<int> reduction_positions(int depth) {
    if (depth < 1) throw InvalidConfigError("reduction_positions: depth must be positive");
    const int quarter = (depth + 3) / 4;
    std::vector<int> positions{quarter, 2 * quarter, 3 * quarter};
    if (positions.back() > depth)
        throw InvalidConfigError("reduction_positions: depth " + std::to_string(depth) +
                                 " cannot hold three evenly placed reductions");
    return positions;
}

void NasNetworkConfig::validate() const {
    opset.validate();
    normal_cell.validate(opset.size());
    reduction_cell.validate(opset.size());
    if (init_width < 1) throw InvalidConfigError("network: init_width must be positive");
    if (depth < 1) throw InvalidConfigError("network: depth must be positive");
    if (reduction_positions != nds::reduction_positions(depth))
        throw InvalidConfigError("network: reduction positions do not match the placement rule");
}

bool NasNetworkConfig::is_reduction(int cell_index) const {
    return std::find(reduction_positions.begin(), reduction_positions.end(), cell_index) !=
           reduction_positions.end();
}

void NasSpaceSpec::validate() const {
    opset.validate();
    if (num_nodes < 1) throw InvalidConfigError("nas spec: num_nodes must be positive");
    if (widths.empty() || depths.empty())
        throw InvalidConfigError("nas spec: width and depth sets must be nonempty");
    for (int w : widths)
        if (w < 1) throw InvalidConfigError("nas spec: widths must be positive");
    for (int d : depths) reduction_positions(d);  // every depth must admit the placement
}

NasNetworkConfig sample_nas_network(const NasSpaceSpec& spec, Rng& rng) {
    spec.validate();
    NasNetworkConfig net;
    net.opset = spec.opset;
    net.normal_cell = sample_cell(spec.opset, spec.num_nodes, spec.output_rule, rng);
    net.reduction_cell = sample_cell(spec.opset, spec.num_nodes, spec.output_rule, rng);
    net.init_width = spec.widths[rng.uniform_index(spec.widths.size())];
    net.depth = spec.depths[rng.uniform_index(spec.depths.size())];
    net.reduction_positions = reduction_positions(net.depth);
    return net;
}

mpz_class nas_space_size(const NasSpaceSpec& spec) {
    spec.validate();
    const mpz_class cells = cell_count(spec.opset.size(), spec.num_nodes);
    return cells * cells * static_cast<unsigned long>(spec.widths.size()) *
           static_cast<unsigned long>(spec.depths.size());
}

}  // namespace nds
