#ifndef BW_WITNESSES_HPP
#define BW_WITNESSES_HPP

#include <bw/witnesses/brute_force.hpp>
#include <bw/witnesses/category.hpp>
#include <bw/witnesses/growth.hpp>

#endif
