#ifndef SEPSYS_ERRORS_HH
#define SEPSYS_ERRORS_HH

#include <stdexcept>
#include <string>

namespace sepsys {

// A caller broke an operation's precondition (wrong k, foreign ids, ...).
class precondition_error : public std::invalid_argument
{
    public:
        using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis (orderliness, robustness, a greatest fiber
// element, ...) turned out false on the concrete instance. Carries a witness
// in the message.
class hypothesis_violation : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

// Instance files and CLI arguments.
class input_error : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

class limit_exceeded : public input_error
{
    public:
        using input_error::input_error;
};

}

#endif
