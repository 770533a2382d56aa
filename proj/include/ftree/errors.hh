/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_ERRORS_HH
#define FTREE_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace ftree
{
    /// Base class for every error raised by the library. The CLI maps these
    /// to exit code 1 and prints kind() as a machine-readable prefix.
    class Error : public std::runtime_error
    {
        public:
            explicit Error(const std::string & message) :
                std::runtime_error(message)
            {
            }

            virtual auto kind() const -> const char * = 0;
    };

    class MalformedWordError : public Error
    {
        public:
            using Error::Error;
            auto kind() const -> const char * override { return "malformed-word"; }
    };

    /// A size or work bound was exceeded (word length cap, node budget, table size).
    class ResourceError : public Error
    {
        public:
            using Error::Error;
            auto kind() const -> const char * override { return "resource"; }
    };

    class PreconditionError : public Error
    {
        public:
            using Error::Error;
            auto kind() const -> const char * override { return "precondition"; }
    };

    class ParseError : public Error
    {
        public:
            ParseError(const std::string & message, int line = 0, int column = 0) :
                Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message : message),
                _line(line),
                _column(column)
            {
            }

            auto kind() const -> const char * override { return "parse"; }
            auto line() const -> int { return _line; }
            auto column() const -> int { return _column; }

        private:
            int _line, _column;
    };

    class GroupError : public Error
    {
        public:
            using Error::Error;
            auto kind() const -> const char * override { return "group"; }
    };
}

#endif
