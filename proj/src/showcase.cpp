#include <array>
#include <string_view>
#include <utility>

#include "chartpat/fixtures.hpp"

namespace chartpat {

namespace {

// Each script is short on purpose: it ends a few bars after the breakout so no
// further swing confirms. Same-kind swings that should not form a trendline
// sit at most three bars apart, and explicit wicks pin the swing prices.
constexpr std::array<std::pair<std::string_view, std::string_view>, 18> kScenarios{{
    // rising bottoms 0 and 5, line broken down at 11
    {"SC_UPTL", R"(
101.0 l=100.0 h=101.5
107.0
109.0 h=110.0
107.5
106.0
105.5 l=105.0
108.0
110.5
112.0 h=113.0
111.5
110.5
107.0
106.5
)"},
    // falling tops 0 and 5, line broken up at 11
    {"SC_DNTL", R"(
99 h=100 l=98.5
93
91 l=90
92.5
94
94.5 h=95
92
89.5
88 l=87
88.5
89.5
93
93.5
)"},
    // tops 100 and 100.4, bottoms far apart
    {"SC_BHR", R"(
99 h=100
98
96.5
95.5 l=95
97
98.5
99.5 h=100.4
98.5
96
93.5
92.5 l=92
94
96
98
104
104.5
)"},
    // mirror of SC_BHR
    {"SC_BHS", R"(
101.0 l=100.0
102.0
103.5
104.5 h=105.0
103.0
101.5
100.5 l=99.6
101.5
104.0
106.5
107.5 h=108.0
106.0
104.0
102.0
96.0
95.5
)"},
    // bottoms 90 and 89.5, neckline 96.5
    {"SC_DBOT", R"(
91 h=92 l=90
92
93.5
95
95.5 h=96.5
95
93.5
92
90.5 l=89.5
92
93.5
95.5
100
100.5
)"},
    // mirror of SC_DBOT
    {"SC_DTOP", R"(
109.0 l=108.0 h=110.0
108.0
106.5
105.0
104.5 l=103.5
105.0
106.5
108.0
109.5 h=110.5
108.0
106.5
104.5
100.0
99.5
)"},
    // jump from 88 to 100, then a falling parallel drift
    {"SC_UFLAG", R"(
91
89.5
89 l=88
99 h=100 l=98.5 o=98.6
96 h=96.9 l=95 o=96.5
96.5 h=96.8 l=95.5
96.5 h=97 l=96
95.5 h=96.5 l=95.2
92 h=95 l=91
93 h=94 l=92
94 h=95 l=93
95.5 h=96 l=94
96 h=96.5 l=95
96.5
)"},
    // mirror of SC_UFLAG
    {"SC_DFLAG", R"(
109.0
110.5
111.0 h=112.0
101.0 l=100.0 h=101.5 o=101.4
104.0 l=103.1 h=105.0 o=103.5
103.5 l=103.2 h=104.5
103.5 l=103.0 h=104.0
104.5 l=103.5 h=104.8
108.0 l=105.0 h=109.0
107.0 l=106.0 h=108.0
106.0 l=105.0 h=107.0
104.5 l=104.0 h=106.0
104.0 l=103.5 h=105.0
103.5
)"},
    // jump from 88 to 100, then a short converging range
    {"SC_UPEN", R"(
91
89.5
89 l=88
99 h=100 l=98.5 o=98.6
91.5 h=96 l=90 o=96
94 h=95 l=92.5
96.5 h=97.5 l=95
92.5 h=94 l=91.5 o=93.5
93.5 h=94.5 l=92.5
94 h=95 l=93
98 h=98.5 l=93.8
98.5
)"},
    // mirror of SC_UPEN
    {"SC_DPEN", R"(
109.0
110.5
111.0 h=112.0
101.0 l=100.0 h=101.5 o=101.4
108.5 l=104.0 h=110.0 o=104.0
106.0 l=105.0 h=107.5
103.5 l=102.5 h=105.0
107.5 l=106.0 h=108.5 o=106.5
106.5 l=105.5 h=107.5
106.0 l=105.0 h=107.0
102.0 l=101.5 h=106.2
101.5
)"},
    // the SC_UPEN range without the jump
    {"SC_UTRI", R"(
99 h=100 l=98.5
91.5 h=96 l=90 o=96
94 h=95 l=92.5
96.5 h=97.5 l=95
92.5 h=94 l=91.5 o=93.5
93.5 h=94.5 l=92.5
94 h=95 l=93
98 h=98.5 l=93.8
98.5
)"},
    // mirror of SC_UTRI
    {"SC_DTRI", R"(
101.0 l=100.0 h=101.5
108.5 l=104.0 h=110.0 o=104.0
106.0 l=105.0 h=107.5
103.5 l=102.5 h=105.0
107.5 l=106.0 h=108.5 o=106.5
106.5 l=105.5 h=107.5
106.0 l=105.0 h=107.0
102.0 l=101.5 h=106.2
101.5
)"},
    // tops 100/100.4 over bottoms 95/94.7
    {"SC_RECT", R"(
99 h=100
98
96.5
95.5 l=95
97
98.5
99.5 h=100.4
98.5
97
97
95.5 l=94.7
96.5
97
98
104
104.5
)"},
    // rising parallel lines, bottoms 3 bars apart
    {"SC_CHAN", R"(
96 h=96.5 l=95 o=96.2
97.5
99.4 h=100
97.6 l=97 o=98
98.5
99.4
102 h=102.67 o=101 l=100.95
101.5 o=101.8 h=102 l=100.8
101.2 o=101.5 h=101.8 l=100.7
101 o=101.2 h=101.5 l=100.6
109 o=101.2 h=109.3 l=101
109.5
)"},
    // mirror of SC_DHS
    {"SC_UHS", R"(
101.0 l=100.0 h=101.5
102.5
104.0
104.5 h=105.0
101.0
96.0
91.0 l=90.0
107.0 l=100.0 h=108.0 o=101.0
104.0
100.0 l=99.0
103.0
108.0
116.5
117
)"},
    // head 110 between shoulders 100 and 101, falling neckline
    {"SC_DHS", R"(
99 h=100 l=98.5
97.5
96
95.5 l=95
99
104
109 h=110
93 h=100 l=92 o=99
96
100 h=101
97
92
85
84.5
)"},
    // top 100 fanning through lower tops 10, 18 and 27; wick lows keep bottoms falling
    {"SC_HFAN", R"(
96 h=100 o=99.5
89 l=88 o=89.2 h=89.4
88.5 l=88.3
89 h=89.5
88.3 o=88.6 l=88.1 h=88.8
86.5
86 l=85
88
90
91
91.5 h=92
90
88.5
87
86 l=82
89
91
93
94.5 h=95
93
91
89
88 l=79
93
95.5
97
98
98 h=98.5
96
95
94.5
101.5
101
)"},
    // mirror of SC_HFAN
    {"SC_DFAN", R"(
104.0 l=100.0 o=100.5
111 h=112 o=111 l=110.6
111.5 h=111.7
111.0 l=110.5
111.7 o=111.4 h=111.9 l=111.2
113.5
114.0 h=115.0
112.0
110.0
109.0
108.5 l=108.0
110.0
111.5
113.0
114.0 h=118.0
111.0
109.0
107.0
105.5 l=105.0
107.0
109.0
111.0
112.0 h=121.0
107.0
104.5
103.0
102.0
102.0 l=101.5
104.0
105.0
105.5
98.5
99.0
)"},
}};

}  // namespace

std::vector<Series> showcase_bundle() {
    std::vector<Series> out;
    out.reserve(kScenarios.size());
    for (const auto& [id, script] : kScenarios) {
        const auto specs = parse_bar_script(script);
        out.push_back(series_from_specs(std::string(id), specs));
    }
    return out;
}

}  // namespace chartpat
