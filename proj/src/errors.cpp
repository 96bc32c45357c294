#include "projmatch/errors.hpp"

#include <cstdio>

namespace projmatch {

namespace {

std::string depth_message(int view_id, long point_index, double depth, long step) {
  char buf[160];
  if (step >= 0) {
    std::snprintf(buf, sizeof(buf), "point %ld has depth %.6g <= 1e-8 in view %d at step %ld",
                  point_index, depth, view_id, step);
  } else {
    std::snprintf(buf, sizeof(buf), "point %ld has depth %.6g <= 1e-8 in view %d", point_index,
                  depth, view_id);
  }
  return buf;
}

std::string k_message(int k, long available) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "k = %d exceeds the %ld available points", k, available);
  return buf;
}

}  // namespace

DepthError::DepthError(int view_id, long point_index, double depth, long step)
    : std::runtime_error(depth_message(view_id, point_index, depth, step)),
      view_id_(view_id),
      point_index_(point_index),
      depth_(depth),
      step_(step) {}

EmptySilhouette::EmptySilhouette(const std::string& what) : std::runtime_error(what) {}

EmptySet::EmptySet(const std::string& what) : std::runtime_error(what) {}

KTooLarge::KTooLarge(int k, long available)
    : std::runtime_error(k_message(k, available)), k_(k), available_(available) {}

NonTermination::NonTermination(const std::string& what) : std::runtime_error(what) {}

ShapeMismatch::ShapeMismatch(const std::string& what) : std::runtime_error(what) {}

IoError::IoError(const std::string& what) : std::runtime_error(what) {}

}  // namespace projmatch
