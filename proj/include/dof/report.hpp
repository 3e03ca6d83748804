#ifndef DOF_REPORT_HPP
#define DOF_REPORT_HPP

#include <json.hpp>

#include <string>

#include "dof/chain.hpp"
#include "dof/closed_form.hpp"
#include "dof/oracle.hpp"
#include "dof/proper.hpp"

namespace dof {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// {"schema": 1, "command": ...}; every report starts with these two keys.
Json report_header(const std::string& command);

Json config_json(const NetworkConfig& config, const StreamAllocation* streams = nullptr);
Json rational_json(const Rational& value);
Json rational_json(const ExtendedRational& value);

Json pattern_json(const ConnectionPattern& pattern, const InterferencePairSet& pairs);
Json chain_json(const PatternChain& chain, const InterferencePairSet& pairs);
Json subspace_json(const SubspaceChainState& state, const NetworkConfig& config, const InterferencePairSet& pairs);

Json proper_json(const ProperVerdict& verdict, const InterferencePairSet& pairs);
Json irreducible_json(const IrreducibleVerdict& verdict, const NetworkConfig& config);
Json classification_json(const Classification& c, const NetworkConfig& config);
Json max_dof_json(const MaxDofResult& result, const NetworkConfig& config);
Json region_json(const RegionResult& result);
Json closed_form_json(const ClosedFormReport& report);
Json oracle_json(const OracleVerdict& verdict, const VerifySettings& settings);

// dump(2) plus a trailing newline.
std::string render(const Json& doc);

}  // namespace dof

#endif  // DOF_REPORT_HPP
