#include "dgpa/graded_space.hpp"

namespace dgpa {

GradedSpace::GradedSpace(std::vector<BasisSymbol> symbols) {
    auto data = std::make_shared<Data>();
    data->symbols = std::move(symbols);
    for (std::uint32_t i = 0; i < data->symbols.size(); ++i) {
        auto [it, inserted] = data->index.emplace(data->symbols[i].name, i);
        if (!inserted)
            throw value_error("duplicate basis symbol '" + data->symbols[i].name + "'");
    }
    data_ = std::move(data);
}

std::optional<std::uint32_t> GradedSpace::find(std::string_view name) const {
    auto it = data_->index.find(name);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

std::uint32_t GradedSpace::index_of(std::string_view name) const {
    auto idx = find(name);
    if (!idx) throw value_error("unknown basis symbol '" + std::string(name) + "'");
    return *idx;
}

GradedSpace tensor_space(const GradedSpace& v, const GradedSpace& w) {
    std::vector<BasisSymbol> symbols;
    symbols.reserve(v.dim() * w.dim());
    for (std::uint32_t i = 0; i < v.dim(); ++i)
        for (std::uint32_t j = 0; j < w.dim(); ++j)
            symbols.push_back({v.name(i) + "⊗" + w.name(j), v.degree(i) + w.degree(j)});
    return GradedSpace(std::move(symbols));
}

} // namespace dgpa
