#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nplan/bits.hpp"

namespace nplan {

using AtomIndex = std::uint32_t;
using ActionIndex = std::uint32_t;

struct GroundAction {
    // Sorted, duplicate-free atom index lists. add and del are disjoint.
    std::vector<AtomIndex> pre;
    std::vector<AtomIndex> add;
    std::vector<AtomIndex> del;
};

// STRIPS problem over dense atom indices. States are StateBits of width
// num_atoms(). Built by the grounder or read from a gstrips file.
struct GroundProblem {
    std::vector<std::string> atom_names;
    std::vector<std::string> action_names;
    std::vector<GroundAction> actions;
    std::vector<AtomIndex> init;
    std::vector<AtomIndex> goal;
    // Set when grounding proved the goal unreachable even under delete
    // relaxation.
    bool provably_unsolvable = false;

    std::uint32_t num_atoms() const {
        return static_cast<std::uint32_t>(atom_names.size());
    }
    std::uint32_t num_actions() const {
        return static_cast<std::uint32_t>(actions.size());
    }

    StateBits initial_state() const {
        StateBits s(num_atoms());
        for (AtomIndex a : init) s.set(a);
        return s;
    }

    StateBits goal_bits() const {
        StateBits s(num_atoms());
        for (AtomIndex a : goal) s.set(a);
        return s;
    }

    bool is_goal(const StateBits& s) const {
        for (AtomIndex a : goal)
            if (!s.test(a)) return false;
        return true;
    }
};

using Plan = std::vector<ActionIndex>;

inline bool applicable(const GroundProblem& gp, const StateBits& s,
                       ActionIndex a) {
    for (AtomIndex p : gp.actions[a].pre)
        if (!s.test(p)) return false;
    return true;
}

// result = (s \ del(a)) | add(a). The action must be applicable.
inline StateBits successor(const GroundProblem& gp, const StateBits& s,
                           ActionIndex a) {
    if (!applicable(gp, s, a))
        throw std::logic_error("successor: action " + gp.action_names[a] +
                               " not applicable");
    StateBits out = s;
    for (AtomIndex p : gp.actions[a].del) out.reset(p);
    for (AtomIndex p : gp.actions[a].add) out.set(p);
    return out;
}

struct PlanValid {
    StateBits final_state;
};
struct PlanInvalid {
    std::size_t step;
    std::string reason;
};
using PlanValidation = std::variant<PlanValid, PlanInvalid>;

inline PlanValidation validate_plan(const GroundProblem& gp, const Plan& plan) {
    StateBits s = gp.initial_state();
    for (std::size_t i = 0; i < plan.size(); ++i) {
        if (plan[i] >= gp.num_actions())
            return PlanInvalid{i, "action index out of range"};
        if (!applicable(gp, s, plan[i]))
            return PlanInvalid{i, "action " + gp.action_names[plan[i]] +
                                      " not applicable"};
        s = successor(gp, s, plan[i]);
    }
    if (!gp.is_goal(s)) return PlanInvalid{plan.size(), "goal not satisfied"};
    return PlanValid{std::move(s)};
}

// Plan files: one ground action name per line, written exactly as grounded,
// e.g. "(move rooma roomb)".
inline void write_plan(std::ostream& os, const GroundProblem& gp,
                       const Plan& plan) {
    for (ActionIndex a : plan) os << gp.action_names[a] << '\n';
}

inline Plan read_plan(std::istream& is, const GroundProblem& gp) {
    std::unordered_map<std::string, ActionIndex> by_name;
    for (ActionIndex i = 0; i < gp.num_actions(); ++i)
        by_name.emplace(gp.action_names[i], i);
    Plan plan;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string name = line.substr(b, e - b + 1);
        if (name.empty() || name[0] == ';' || name[0] == '#') continue;
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw std::runtime_error("plan line " + std::to_string(lineno) +
                                     ": unknown action " + name);
        plan.push_back(it->second);
    }
    return plan;
}

} // namespace nplan
