#include "crflat/context.hpp"

#include <algorithm>
#include <set>

#include "crflat/errors.hpp"
#include "crflat/monomial.hpp"

namespace crflat {

VariableContext::VariableContext(std::vector<std::string> names)
    : names_(std::move(names)) {
  if (names_.size() > kMaxVariables) {
    throw Error(ErrorCode::DimensionMismatch,
                "at most " + std::to_string(kMaxVariables) + " variables supported");
  }
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::ContextMismatch, "duplicate variable '" + n + "'");
    }
  }
}

std::optional<std::size_t> VariableContext::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t VariableContext::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownVariable,
              "unknown variable '" + std::string(name) + "'");
}

Context make_context(std::vector<std::string> names) {
  return std::make_shared<const VariableContext>(std::move(names));
}

bool same_context(const Context& a, const Context& b) {
  return a == b || (a && b && *a == *b);
}

namespace contexts {

namespace {

std::vector<std::string> indexed(std::string_view stem, int n,
                                 std::string_view suffix = "") {
  std::vector<std::string> out;
  for (int k = 1; k <= n; ++k) {
    out.push_back(std::string(stem) + std::to_string(k) + std::string(suffix));
  }
  return out;
}

Context build(std::vector<std::vector<std::string>> blocks) {
  std::vector<std::string> names;
  for (auto& b : blocks) names.insert(names.end(), b.begin(), b.end());
  return make_context(std::move(names));
}

}  // namespace

Context theta(int n) { return build({indexed("z", n), indexed("z", n, "b"), {"wb"}}); }

Context theta_conjugate(int n) {
  return build({indexed("z", n), indexed("z", n, "b"), {"w"}});
}

Context holomorphic(int n) { return build({indexed("z", n), {"w"}}); }

Context jet(int n) { return build({indexed("x", n), {"y"}, indexed("yx", n)}); }

Context fundamental(int n) { return build({indexed("x", n), indexed("a", n), {"b"}}); }

Context graph(int n) { return build({indexed("x", n), indexed("y", n), {"v"}}); }

}  // namespace contexts

}  // namespace crflat
