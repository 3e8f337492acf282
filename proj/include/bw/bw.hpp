#ifndef BW_BW_HPP
#define BW_BW_HPP

#include <bw/certificate.hpp>
#include <bw/document.hpp>
#include <bw/error.hpp>
#include <bw/ideals.hpp>
#include <bw/index_stream.hpp>
#include <bw/series.hpp>
#include <bw/spaces.hpp>
#include <bw/witnesses.hpp>

#endif
