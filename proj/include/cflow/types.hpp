#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <stdexcept>
#include <string>

namespace cflow {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

template <typename S>
using Vec2T = Eigen::Matrix<S, 2, 1>;
template <typename S>
using Vec3T = Eigen::Matrix<S, 3, 1>;

// Failure modes that callers are expected to handle. The code string is
// stable API; the CLI maps it to a process exit status.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* parse = "parse";
inline constexpr const char* non_contractible = "non_contractible";
inline constexpr const char* self_intersection = "self_intersection";
inline constexpr const char* not_nested = "not_nested";
inline constexpr const char* no_touch = "no_touch";
inline constexpr const char* angle_too_large = "angle_too_large";
inline constexpr const char* bad_curve = "bad_curve";
inline constexpr const char* chart_radius = "chart_radius";
inline constexpr const char* infeasible = "infeasible";
inline constexpr const char* blow_up = "blow_up";
inline constexpr const char* epsilon_too_large = "epsilon_too_large";
inline constexpr const char* certification_failure = "certification_failure";
}  // namespace errc

inline int exit_code_for(const std::string& code) {
  if (code == errc::parse) return 2;
  if (code == errc::blow_up) return 4;
  if (code == errc::epsilon_too_large || code == errc::certification_failure)
    return 5;
  return 3;
}

}  // namespace cflow
