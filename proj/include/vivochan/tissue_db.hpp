#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vivochan/dielectric.hpp"

namespace vivochan {

// Collection of tissue parameter sets loaded from a CSV or JSON file.
// CSV schema (header required, '#' lines ignored, rho column optional):
//   tissue,eps_inf,d1,tau1,a1,d2,tau2,a2,d3,tau3,a3,d4,tau4,a4,sigma,fmin,fmax[,rho]
// JSON schema: array of objects with the same field names.
class TissueDatabase {
 public:
  TissueDatabase() = default;

  static TissueDatabase load_csv(std::istream& in);
  static TissueDatabase load_json(std::istream& in);
  // Dispatches on content (leading '[' or '{' selects JSON).
  static TissueDatabase load(std::istream& in);
  static TissueDatabase load_file(const std::string& path);

  const TissueDielectricSpec& find(std::string_view tissue_name) const;
  bool contains(std::string_view tissue_name) const;
  std::vector<std::string> names() const;

  const std::vector<TissueDielectricSpec>& specs() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  bool empty() const { return specs_.empty(); }

  // Rejects duplicates and re-runs the spec invariants.
  void add(TissueDielectricSpec spec);

 private:
  std::vector<TissueDielectricSpec> specs_;
};

}  // namespace vivochan
