#include "laurentlab/ring/variable_table.hpp"

#include <cctype>
#include <stdexcept>

namespace laurentlab::ring {

VariableTable::VariableTable(std::vector<std::string> names) : names_(std::move(names))
{
    lookup_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!valid_name(names_[i])) {
            throw std::invalid_argument("invalid variable name '" + names_[i] + "'");
        }
        if (!lookup_.emplace(names_[i], static_cast<VarIndex>(i)).second) {
            throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
        }
    }
}

std::shared_ptr<const VariableTable> VariableTable::make(std::vector<std::string> names)
{
    return std::make_shared<const VariableTable>(std::move(names));
}

std::optional<VarIndex> VariableTable::find(std::string_view name) const
{
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

VarIndex VariableTable::index(std::string_view name) const
{
    if (auto i = find(name)) {
        return *i;
    }
    throw std::out_of_range("unknown variable '" + std::string(name) + "'");
}

bool VariableTable::valid_name(std::string_view name) noexcept
{
    // Names must be separable from coefficients and operators in the
    // canonical grammar: first character alphabetic, no blanks, '*', '^', '+'.
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^' || c == '+') {
            return false;
        }
    }
    return true;
}

} // namespace laurentlab::ring
