#pragma once

#include <stdexcept>
#include <string>

namespace discenc {

/// Raised by file loaders and model (de)serialization. The kind pins down
/// which contract was violated so callers and tests can tell them apart.
class FormatError : public std::runtime_error {
public:
    enum class Kind {
        VersionMismatch,  // model file carries an unsupported format_version
        CorruptLength,    // truncated payload or length field disagreement
        NonFinite,        // NaN/Inf in serialized reals
        BadMagic,         // IDX magic number is not the expected one
        CountMismatch,    // image and label files disagree on sample count
        BadImage,         // unreadable or malformed image file
        EmptyClass,       // class directory with no images
        BadConfig,        // malformed config document
    };

    FormatError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace discenc
