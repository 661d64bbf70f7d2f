#pragma once

#include <stdexcept>
#include <string>

namespace eesampler {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state outside the support, or with non-finite coordinates.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class InvalidLadderError : public Error {
 public:
  using Error::Error;
};

/// Pilot runs left every ring above chain 0 empty.
class TuningInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An estimator was asked for a value over no samples.
class UndefinedEstimateError : public Error {
 public:
  using Error::Error;
};

class DegenerateWeightsError : public Error {
 public:
  DegenerateWeightsError(const std::string& what, double max_log_weight)
      : Error(what), max_log_weight_(max_log_weight) {}
  double max_log_weight() const noexcept { return max_log_weight_; }

 private:
  double max_log_weight_;
};

/// Invalid experiment configuration; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace eesampler
