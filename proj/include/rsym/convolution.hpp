#pragma once

#include <mutex>
#include <vector>

namespace rsym {

// FFTW's planner is not thread-safe; every plan creation and destruction
// takes this lock.
std::mutex& fftw_planner_mutex();

// Full linear convolution, length a.size() + b.size() - 1.
// Direct summation for short inputs, FFTW otherwise.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// Several products sharing transforms: returns conv(a[i], b[i]) for each pair.
std::vector<std::vector<double>> convolve_many(const std::vector<const std::vector<double>*>& a,
                                               const std::vector<const std::vector<double>*>& b);

std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace rsym
