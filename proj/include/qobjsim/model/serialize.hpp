#pragma once

#include <string>

#include "qobjsim/model/types.hpp"

namespace qobjsim::model {

Json to_json(const Qobj& q);
Json to_json(const Experiment& e, QobjType type);
Json to_json(const Instruction& i);
Json to_json(const UserConfig& c);
Json to_json(const BackendConfiguration& c);
Json to_json(const BackendProperties& p);
Json to_json(const BackendStatus& s);
Json to_json(const PulseDefaults& d);
Json to_json(const HamiltonianDict& h);
Json to_json(const GateConfig& g);
Json to_json(const NduvStruct& n);
Json to_json(const PulseLibEntry& p);
Json to_json(const KernelSpec& k);
Json to_json(const CmdDefEntry& e);
Json to_json(const JobStatus& s);
Json to_json(const ResultDocument& r);
Json to_json(const ExperimentResult& r);
Json to_json(const ExpData& d);

/// Two-space indented JSON plus trailing newline; the on-disk/wire form.
std::string serialize(const Json& j);

/// Object comparison that ignores key order (the round-trip notion of
/// equality; ordered_json operator== is order sensitive).
bool structurally_equal(const Json& a, const Json& b);

}  // namespace qobjsim::model
