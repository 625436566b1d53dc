#pragma once

#include <stdexcept>
#include <string>

namespace edgelab {

/// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside its documented range, or shapes that do not match.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Refinement trend is neither bounded below nor cleanly decaying.
class Unclassifiable : public Error {
public:
    using Error::Error;
};

/// A solve was requested on a bordered system that did not certify.
class NotCertified : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace edgelab
