#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace stablepb {

using AtomId = int;

/// Dense name <-> id table. Ids are 0..size()-1 in interning order.
class AtomTable {
public:
    AtomId intern(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end())
            return it->second;
        AtomId id = static_cast<AtomId>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    bool has(const std::string& name) const { return index_.count(name) != 0; }

    AtomId id_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::out_of_range("unknown atom: " + name);
        return it->second;
    }

    const std::string& name(AtomId id) const { return names_.at(static_cast<std::size_t>(id)); }

    int size() const { return static_cast<int>(names_.size()); }

    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> index_;
};

/// A set of atom ids, kept sorted. Small value type; all set operations are
/// linear merges, which is plenty at the program sizes this library targets.
class AtomSet {
public:
    AtomSet() = default;
    AtomSet(std::initializer_list<AtomId> ids) {
        for (AtomId a : ids)
            insert(a);
    }
    static AtomSet from_vector(std::vector<AtomId> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        AtomSet s;
        s.ids_ = std::move(v);
        return s;
    }

    bool contains(AtomId a) const { return std::binary_search(ids_.begin(), ids_.end(), a); }

    void insert(AtomId a) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
        if (it == ids_.end() || *it != a)
            ids_.insert(it, a);
    }

    void erase(AtomId a) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
        if (it != ids_.end() && *it == a)
            ids_.erase(it);
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool subset_of(const AtomSet& other) const {
        return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
    }

    AtomSet unioned(const AtomSet& other) const {
        AtomSet out;
        std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                       std::back_inserter(out.ids_));
        return out;
    }

    AtomSet intersect(const AtomSet& other) const {
        AtomSet out;
        std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                              std::back_inserter(out.ids_));
        return out;
    }

    AtomSet minus(const AtomSet& other) const {
        AtomSet out;
        std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                            std::back_inserter(out.ids_));
        return out;
    }

    bool intersects(const AtomSet& other) const {
        auto i = ids_.begin();
        auto j = other.ids_.begin();
        while (i != ids_.end() && j != other.ids_.end()) {
            if (*i == *j)
                return true;
            if (*i < *j)
                ++i;
            else
                ++j;
        }
        return false;
    }

    bool operator==(const AtomSet& other) const { return ids_ == other.ids_; }
    bool operator!=(const AtomSet& other) const { return ids_ != other.ids_; }
    bool operator<(const AtomSet& other) const { return ids_ < other.ids_; }

    const std::vector<AtomId>& ids() const { return ids_; }

private:
    std::vector<AtomId> ids_;
};

/// An interpretation is a set of true atoms.
using Interpretation = AtomSet;

}  // namespace stablepb
