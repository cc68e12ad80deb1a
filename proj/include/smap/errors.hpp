#pragma once

#include <stdexcept>

namespace smap {

/// A frame could not be built: the projection N[u1, u2] was asked to act
/// outside the region |u1|, |u2| in (1/2, 2), |u1 . u2| < 2^-5, or the
/// sweep construction met a grid too coarse for its oscillation bound.
class FrameDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Renormalization met a point whose length left [1/2, 2].
class BlowupSuspected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, truncated or mismatched snapshot file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or unknown configuration entry.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smap
