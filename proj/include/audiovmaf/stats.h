// Copyright 2026 The AudioVMAF Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUDIOVMAF_STATS_H_
#define AUDIOVMAF_STATS_H_

#include <vector>

namespace audiovmaf {

// Sample Pearson correlation. Requires equal lengths >= 3 and two
// non-constant vectors ("zero variance" otherwise).
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Average ranks (ties get the mean of their rank range), 1-based.
std::vector<double> average_ranks(const std::vector<double>& x);

// Pearson correlation of the average-ranked data.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_STATS_H_
