#pragma once

#include <stdexcept>
#include <string>

namespace tradecirc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable stream / file.
struct IoError : Error {
    using Error::Error;
};

/// Structurally broken input (bad header, too many malformed rows, bad config).
struct FormatError : Error {
    using Error::Error;
};

/// An operation was called outside its stated domain.
struct PreconditionError : Error {
    using Error::Error;
};

/// Too few observations to compute the requested quantity.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// A series with zero variance cannot be standardized.
struct DegenerateSeriesError : Error {
    using Error::Error;
};

/// Control selection left nothing to compare against.
struct EmptyPanelError : Error {
    using Error::Error;
};

/// A log-scale response requires strictly positive values.
struct NonpositiveResponseError : Error {
    using Error::Error;
};

/// The treatment dummy carries no within-entity variation.
struct UnidentifiedBetaError : Error {
    using Error::Error;
};

/// A detection flag has no matching investigation label.
struct MissingLabelError : Error {
    using Error::Error;
};

/// Recall is undefined when there are no positive labels.
struct UndefinedRateError : Error {
    using Error::Error;
};

}  // namespace tradecirc
