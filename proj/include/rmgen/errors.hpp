#pragma once

#include <stdexcept>
#include <string>

namespace rmgen {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tensor shapes, grid shapes or map shapes that do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Parameters outside their documented range.
class ConfigError : public Error {
public:
    using Error::Error;
};

// File open/read/write failures and malformed files.
class StorageError : public Error {
public:
    using Error::Error;
};

class SelectionError : public Error {
public:
    using Error::Error;
};

// Condition sets that do not fit the encoder or the checkpoint.
class ConditionError : public Error {
public:
    using Error::Error;
};

// Diffusion step outside [1, T].
class StepError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace rmgen
