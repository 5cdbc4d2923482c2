#pragma once

#include <string>
#include <vector>

namespace gqs {

struct PropertyCheck {
    std::string name;
    std::string domain;      // sampled domain, human readable
    double worst = 0.0;      // worst violation magnitude (0 when clean)
    bool pass = true;
};

struct PropertyReport {
    std::vector<PropertyCheck> entries;

    bool overall() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    const PropertyCheck* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

}  // namespace gqs
