#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "artifact/ainf.hpp"

namespace artifact::cli {

// Schema or reference error in a category spec file; `where` is a JSON
// pointer or "line L, column C" for syntax errors.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

constexpr int kSchemaVersion = 1;

// Category spec file (schema 1):
//   objects:  [name, ...]
//   homs:     [{source, target, elements: [{name, degree}, ...]}, ...]
//   products: [{arity, objects: [X_0, ..., X_d], inputs: [a_1, ..., a_d],
//               output, coefficient: "num/den"}, ...]
//   arity_bound, check_arity, units: {object: element}
// inputs[k-1] is an element of hom(X_{k-1}, X_k).
nlohmann::json category_to_json(const ainf::AInfCategory& c, int check_arity = 3);
struct LoadedCategory {
  std::shared_ptr<ainf::AInfCategory> category;
  int check_arity = 3;
};
LoadedCategory category_from_json(const nlohmann::json& j);
LoadedCategory category_from_text(const std::string& text);
LoadedCategory load_category_file(const std::string& path);

enum ExitCode : int { kOk = 0, kUsage = 1, kInvariant = 2, kPrecondition = 3 };

// Runs the command line (args exclude the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace artifact::cli
