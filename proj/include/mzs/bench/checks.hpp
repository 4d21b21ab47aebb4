#pragma once

#include <string>
#include <vector>

namespace mzs::bench {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckOptions {
  std::string cache_dir = "ref_cache";
};

CheckResult check_commutator_identities();                 // 1
CheckResult check_sbch_order();                            // 2
CheckResult check_splitting_vs_magnus();                   // 3
CheckResult check_global_orders(const CheckOptions& opt);  // 4
CheckResult check_scaling_slopes();                        // 5
CheckResult check_unitarity();                             // 6
CheckResult check_table1(const CheckOptions& opt);         // 7
CheckResult check_oscillatory_robustness(const CheckOptions& opt); // 8
CheckResult check_time_independent_reduction();            // 9
CheckResult check_sigma_spot(const CheckOptions& opt);     // supplementary

// All of the above, in order.
std::vector<CheckResult> run_all_checks(const CheckOptions& opt);

} // namespace mzs::bench
