#pragma once

#include <stdexcept>
#include <string>

namespace projmatch {

/// A 3D point projected at or behind a camera's image plane. In this
/// artifact cameras ring an object-centered cloud, so a non-positive
/// depth means a broken camera setup or a diverged optimization.
class DepthError : public std::runtime_error {
public:
  DepthError(int view_id, long point_index, double depth, long step = -1);

  int view_id() const { return view_id_; }
  long point_index() const { return point_index_; }
  double depth() const { return depth_; }
  /// Optimization step at which the error occurred, -1 outside a run.
  long step() const { return step_; }

  DepthError with_step(long step) const { return {view_id_, point_index_, depth_, step}; }

private:
  int view_id_;
  long point_index_;
  double depth_;
  long step_;
};

class EmptySilhouette : public std::runtime_error {
public:
  explicit EmptySilhouette(const std::string& what = "silhouette has zero area");
};

class EmptySet : public std::runtime_error {
public:
  explicit EmptySet(const std::string& what = "point set is empty");
};

class KTooLarge : public std::runtime_error {
public:
  KTooLarge(int k, long available);
  int k() const { return k_; }
  long available() const { return available_; }

private:
  int k_;
  long available_;
};

class NonTermination : public std::runtime_error {
public:
  explicit NonTermination(const std::string& what);
};

class ShapeMismatch : public std::runtime_error {
public:
  explicit ShapeMismatch(const std::string& what);
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what);
};

}  // namespace projmatch
