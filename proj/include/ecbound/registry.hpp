#pragma once

#include "ecbound/errors.hpp"
#include "ecbound/points.hpp"

#include <map>
#include <string>

namespace ecb::bounds {

enum class Provenance { PaperStructural, ImplementerChosen, UserSupplied };

std::string to_string(Provenance p);

struct ConstantEntry {
    double value = 0.0;
    Provenance provenance = Provenance::ImplementerChosen;
    bool frozen = false;  // structural values a registry file may not override
    bool derived = false; // recomputed from other entries at load
    std::string note;
};

/// Named constants of the bound chain plus tolerances and effort budgets.
/// Construction yields the shipped defaults; load() applies "key = value"
/// overrides from a file and recomputes the derived entries. Immutable
/// after construction/load.
class ConstantsRegistry {
public:
    ConstantsRegistry();

    /// Defaults + overrides from a registry file ("key = value" lines,
    /// '#' comments). Unknown, frozen or derived keys raise ParseError.
    static ConstantsRegistry load(const std::string& path);

    /// Single programmatic override (same rules as the file loader).
    void set(const std::string& key, double value);

    double get(const std::string& key) const;
    const ConstantEntry& entry(const std::string& key) const;
    const std::map<std::string, ConstantEntry>& entries() const { return entries_; }

    points::HeightParams height_params() const;

    /// Human-readable dump, one "key = value  # provenance: note" line each.
    std::string to_text() const;

private:
    void recompute_derived();
    void validate() const;

    std::map<std::string, ConstantEntry> entries_;
};

} // namespace ecb::bounds
