#include "netbatch/error.hpp"

namespace netbatch {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::Index: return "index error";
        case ErrorKind::Generation: return "generation error";
        case ErrorKind::Model: return "model error";
        case ErrorKind::Config: return "configuration error";
        case ErrorKind::Io: return "i/o error";
    }
    return "error";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace netbatch
