/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace pp {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    IoError,
    TargetUnreachable,
    DegenerateTarget,
    EmptyWorkspace,
    RoiOutOfBounds,
    ImageTooSmall,
    PieceOutOfFrame,
    PlanSceneMismatch,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:   return "InvalidArgument";
        case ErrorCode::ParseError:        return "ParseError";
        case ErrorCode::IoError:           return "IoError";
        case ErrorCode::TargetUnreachable: return "TargetUnreachable";
        case ErrorCode::DegenerateTarget:  return "DegenerateTarget";
        case ErrorCode::EmptyWorkspace:    return "EmptyWorkspace";
        case ErrorCode::RoiOutOfBounds:    return "RoiOutOfBounds";
        case ErrorCode::ImageTooSmall:     return "ImageTooSmall";
        case ErrorCode::PieceOutOfFrame:   return "PieceOutOfFrame";
        case ErrorCode::PlanSceneMismatch: return "PlanSceneMismatch";
    }
    return "Unknown";
}

} // namespace pp
