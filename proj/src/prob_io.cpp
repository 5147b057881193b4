#include "wlab/prob_io.hpp"

#include <json.hpp>

#include "wlab/measure_io.hpp"

namespace wlab {

std::string variable_to_csv(const RandomVariable& x) {
    return measure_to_csv(law(x));
}

RandomVariable variable_from_csv(const std::string& text) {
    EmpiricalMeasure table = measure_from_csv(text);
    return {AtomSpace(table.size()), table.dim(), table.data()};
}

std::string partition_to_json(const Partition& pi) {
    nlohmann::json blocks = nlohmann::json::array();
    for (std::size_t b = 0; b < pi.block_count(); ++b) {
        nlohmann::json blk = nlohmann::json::array();
        for (auto a : pi.block(b)) blk.push_back(a);
        blocks.push_back(std::move(blk));
    }
    return blocks.dump();
}

Partition partition_from_json(const std::string& text) {
    nlohmann::json blocks;
    try {
        blocks = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw invalid_input(std::string("partition_from_json: ") + e.what());
    }
    if (!blocks.is_array() || blocks.empty())
        throw invalid_input("partition_from_json: expected a nonempty array of blocks");
    std::vector<std::vector<std::uint32_t>> parsed;
    std::size_t atoms = 0;
    for (const auto& blk : blocks) {
        if (!blk.is_array()) throw invalid_input("partition_from_json: block is not an array");
        std::vector<std::uint32_t> indices;
        for (const auto& cell : blk) {
            if (!cell.is_number_unsigned())
                throw invalid_input("partition_from_json: atom index must be a nonnegative integer");
            indices.push_back(cell.get<std::uint32_t>());
        }
        atoms += indices.size();
        parsed.push_back(std::move(indices));
    }
    // Partition's constructor enforces disjointness, balance, and coverage.
    return {AtomSpace(atoms), std::move(parsed)};
}

} // namespace wlab
