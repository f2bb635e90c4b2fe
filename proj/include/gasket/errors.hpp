#pragma once

#include <stdexcept>
#include <string>

namespace gasket {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// geometry
class InvalidSpec : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };
class LineImage : public Error { public: using Error::Error; };
class DegenerateMap : public Error { public: using Error::Error; };

// enumeration
class CapacityExceeded : public Error { public: using Error::Error; };

// statistics
class EmptyRegion : public Error { public: using Error::Error; };
class Singleton : public Error { public: using Error::Error; };
class GridMismatch : public Error { public: using Error::Error; };
class InvalidArgument : public Error { public: using Error::Error; };

} // namespace gasket
