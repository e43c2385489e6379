// Copyright 2026 The ecebias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECEBIAS_IO_H_
#define ECEBIAS_IO_H_

#include <string>

namespace ecebias {

// Whole-file read; throws ecebias::Error if the file cannot be opened.
std::string ReadFile(const std::string &path);

// Writes through a sibling temporary file and renames it over `path`, so a
// reader never observes a partially written file.
void WriteFileAtomic(const std::string &path, const std::string &contents);

}  // namespace ecebias

#endif  // ECEBIAS_IO_H_
