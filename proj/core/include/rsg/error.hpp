/*
 * Copyright 2026 the rsg authors
 *
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

namespace rsg {

/// Failure categories raised by simulation, solving and certificate ops.
enum class ErrorKind {
    NotASwitchVertex,
    NotAPlayerVertex,
    IllegalChoice,
    ChoiceRequired,
    NotOnePlayer,
    NotWinningPlay,
    RepeatedState,
    StrategyStuck,
    ShapeMismatch,
    StateLimitExceeded,
    EnumerationCapExceeded,
    UndefinedMove,
    NotThreeBounded,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rsg
