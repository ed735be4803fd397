#pragma once

#include <stdexcept>
#include <string>

namespace tvlab {

// Error taxonomy shared by the library and the CLI exit-code contract:
// input/parameter/domain -> 4, sampling -> 3, conditioning -> 5.

class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

class sampling_error : public std::runtime_error {
public:
    explicit sampling_error(const std::string& what) : std::runtime_error(what) {}
};

class conditioning_error : public std::runtime_error {
public:
    explicit conditioning_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tvlab
