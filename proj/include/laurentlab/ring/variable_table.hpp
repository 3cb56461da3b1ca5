#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace laurentlab::ring {

using VarIndex = std::uint32_t;

/// Ordered list of distinct variable names.
///
/// The declared order is the lexicographic tie-break of the graded term
/// order, so two tables with the same names in a different order give
/// different canonical text. Tables are shared by pointer and never change
/// after construction; polynomials compare their tables by identity.
class VariableTable {
public:
    explicit VariableTable(std::vector<std::string> names);

    static std::shared_ptr<const VariableTable> make(std::vector<std::string> names);

    std::size_t arity() const noexcept { return names_.size(); }
    const std::string& name(VarIndex i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<VarIndex> find(std::string_view name) const;
    /// Throws std::out_of_range for unknown names.
    VarIndex index(std::string_view name) const;

    static bool valid_name(std::string_view name) noexcept;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarIndex> lookup_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

} // namespace laurentlab::ring
