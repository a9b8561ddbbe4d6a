#pragma once

// Published reference data, transcribed by hand.

#include <sstream>
#include <string>
#include <vector>

#include "unrefinable/partition.hpp"

namespace fixtures {

using unrefinable::Int;

inline std::vector<Int> parse_spaced(const std::string& text)
{
    std::istringstream in(text);
    std::vector<Int> out;
    for (Int v; in >> v;)
        out.push_back(v);
    return out;
}

// All unrefinable partitions of 45.
inline const std::vector<std::vector<Int>> unrefinable_45{
    {1, 2, 3, 4, 5, 6, 7, 8, 9},   {1, 2, 3, 5, 6, 7, 10, 11},  {1, 2, 3, 4, 6, 8, 10, 11},
    {1, 2, 3, 4, 5, 9, 10, 11},    {1, 2, 3, 4, 6, 7, 10, 12},  {1, 2, 3, 4, 5, 8, 10, 12},
    {1, 2, 3, 4, 5, 7, 11, 12},    {1, 2, 3, 4, 5, 7, 10, 13},  {1, 2, 3, 4, 5, 6, 11, 13},
    {1, 2, 3, 4, 5, 6, 10, 14},    {1, 2, 4, 5, 8, 11, 14},
};

struct ClassifiedRow {
    std::string parts; // space separated
    std::string cls;
    std::string image; // sigma image, space separated; empty when not listed
};

// Maximal unrefinable partitions of T_13 other than pi_tilde, read off the
// dot diagram, with their images in the partitions of 7.
inline const std::vector<ClassifiedRow> maximal_13{
    {"1 2 3 4 5 6 8 12 13 15 22", "A4", "1 2 4"},
    {"1 2 3 4 5 7 8 10 13 16 22", "B4", "2 5"},
    {"1 2 3 4 6 7 8 9 12 17 22", "C4", "1 6"},
};

// Maximal unrefinable partitions of T_27 = 378 with their classes.
inline const std::vector<ClassifiedRow> maximal_27{
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23 24 28 50", "pi_tilde", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 15 16 17 18 19 20 21 22 26 27 36 50", "A4", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 14 15 16 17 18 19 20 21 22 24 27 37 50", "B4", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 13 14 15 16 17 18 19 20 21 22 23 26 38 50", "C4", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 21 22 26 27 30 31 50", "A5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 19 20 22 26 27 29 32 50", "A5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 18 19 20 21 26 27 28 33 50", "A5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 19 21 22 24 27 30 32 50", "B5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 18 19 20 22 24 27 29 33 50", "B5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 17 18 19 20 21 24 27 28 34 50", "B5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 20 21 22 23 26 31 32 50", "C5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 18 19 21 22 23 26 30 33 50", "C5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 17 18 19 20 22 23 26 29 34 50", "C5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 16 17 18 19 20 21 23 26 28 35 50", "C5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 18 20 21 22 23 24 31 33 50", "D5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 17 18 19 21 22 23 24 30 34 50", "D5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 16 17 18 19 20 22 23 24 29 35 50", "D5", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 24 27 28 29 30 50", "B6", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 20 23 26 28 29 31 50", "C6", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 21 23 24 28 30 31 50", "D6", ""},
    {"1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 19 20 23 24 28 29 32 50", "D6", ""},
};

// Removed small parts (a_1..a_4) of every member of class D7 for n = 49.
inline const std::vector<std::vector<Int>> d7_tuples_49{
    {34, 42, 43, 44}, {35, 41, 43, 44}, {36, 40, 43, 44}, {37, 39, 43, 44},
    {36, 41, 42, 44}, {37, 40, 42, 44}, {38, 39, 42, 44}, {38, 40, 41, 44},
    {37, 41, 42, 43}, {38, 40, 42, 43}, {39, 40, 41, 43},
};

} // namespace fixtures
