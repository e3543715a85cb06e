#ifndef SYMBELL_VERSION_HPP
#define SYMBELL_VERSION_HPP

namespace symbell {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace symbell

#endif  // SYMBELL_VERSION_HPP
