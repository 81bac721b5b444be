/*
 * Copyright 2026 The cechain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// One violating and one conforming model per well-formedness rule V1..V12.
// The violating model breaks exactly that rule and nothing else.

#pragma once

#include <string>
#include <vector>

namespace cechain::testing {

struct RuleFixture {
    const char* rule;
    const char* code;
    std::vector<std::string> bad_components;
    std::string bad_system;
    std::vector<std::string> good_components;
    std::string good_system;
};

inline const char* const kProducer = R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
    }
}
)";

inline const char* const kConsumer = R"(
component Consumer {
    inport in : Msg;
    outport res : Res;
    task ConsumeTask {
        reads in;
        writes res;
    }
}
)";

inline const char* const kPipeline = R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered in;
    }
    connect p.out -> c.in;
    chain Flow = p.out -> c.res;
}
)";

inline const char* const kSingle = R"(
system Single {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
}
)";

inline std::vector<RuleFixture> rule_fixtures() {
    std::vector<RuleFixture> f;

    f.push_back({"V1", "E301",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
    }
    task ShadowTask {
        writes out;
    }
}
)"},
                 R"(
system Single {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
        task ShadowTask periodic 10 Hz;
    }
}
)",
                 {kProducer},
                 kSingle});

    f.push_back({"V2", "E302",
                 {R"(
component Producer {
    outport out : Msg;
    outport out : Msg;
    task ProduceTask {
        writes out;
    }
}
)"},
                 kSingle, {kProducer}, kSingle});

    f.push_back({"V3", "E303",
                 {kProducer, R"(
component Fusion {
    inport a : Msg;
    inport b : Msg;
    inport c : Msg;
    compound ab = AND(a, b);
    compound bc = OR(b, c);
    outport res : Res;
    task FuseTask {
        reads ab;
        reads c;
        writes res;
    }
}
)"},
                 R"(
system Fused {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance f : Fusion {
        task FuseTask periodic 10 Hz;
    }
    connect p.out -> f.a;
}
)",
                 {kProducer, R"(
component Fusion {
    inport a : Msg;
    inport b : Msg;
    inport c : Msg;
    compound ab = AND(a, b);
    outport res : Res;
    task FuseTask {
        reads ab;
        reads c optional;
        writes res;
    }
}
)"},
                 R"(
system Fused {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance q : Producer {
        task ProduceTask periodic 20 Hz;
    }
    instance f : Fusion {
        task FuseTask datatriggered ab;
    }
    connect p.out -> f.a;
    connect q.out -> f.b;
}
)"});

    f.push_back({"V4", "E304",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
        activation [20 Hz, 10 Hz];
    }
}
)"},
                 R"(
system Single {
    instance p : Producer {
        task ProduceTask sporadic [0.05 s, 0.1 s];
    }
}
)",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
        activation [10 Hz, 20 Hz];
    }
}
)"},
                 R"(
system Single {
    instance p : Producer {
        task ProduceTask periodic 15 Hz;
    }
}
)"});

    f.push_back({"V5", "E305",
                 {kProducer, R"(
component Consumer {
    inport in : Msg;
    inport aux : Msg;
    outport res : Res;
    task ConsumeTask {
        reads in;
        reads aux;
        writes res;
    }
}
)"},
                 R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered in;
        task ConsumeTask datatriggered aux;
    }
    connect p.out -> c.in;
    connect p.out -> c.aux;
}
)",
                 {kProducer, R"(
component Consumer {
    inport in : Msg;
    inport aux : Msg;
    outport res : Res;
    task ConsumeTask {
        reads in;
        reads aux;
        writes res;
    }
}
)"},
                 R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered in;
    }
    connect p.out -> c.in;
    connect p.out -> c.aux;
}
)"});

    f.push_back({"V6", "E306",
                 {kProducer, R"(
component Consumer {
    inport in : Msg;
    inport aux : Msg;
    outport res : Res;
    task ConsumeTask {
        reads in;
        writes res;
    }
}
)"},
                 R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered aux;
    }
    connect p.out -> c.in;
    connect p.out -> c.aux;
}
)",
                 {kProducer, kConsumer}, kPipeline});

    f.push_back({"V7", "E307",
                 {kProducer, R"(
component Consumer {
    inport in : Other;
    outport res : Res;
    task ConsumeTask {
        reads in;
        writes res;
    }
}
)"},
                 kPipeline, {kProducer, kConsumer}, kPipeline});

    f.push_back({"V8", "E308",
                 {kProducer, kConsumer},
                 R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance q : Producer {
        task ProduceTask periodic 20 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered in;
    }
    connect p.out -> c.in;
    connect q.out -> c.in;
}
)",
                 {kProducer, kConsumer}, kPipeline});

    f.push_back({"V9", "E309",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
        activation [5 Hz, 20 Hz];
    }
}
)"},
                 R"(
system Single {
    instance p : Producer {
        task ProduceTask periodic 30 Hz;
    }
}
)",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
        activation [5 Hz, 20 Hz];
    }
}
)"},
                 kSingle});

    f.push_back({"V10", "E310",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
        activation [40 Hz, 40 Hz] fixed;
    }
}
)"},
                 R"(
system Single {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
}
)",
                 {R"(
component Producer {
    outport out : Msg;
    task ProduceTask {
        writes out;
        activation [40 Hz, 40 Hz] fixed;
    }
}
)"},
                 R"(
system Single {
    instance p : Producer {
        task ProduceTask periodic 40 Hz;
    }
}
)"});

    f.push_back({"V11", "E311",
                 {kProducer, kConsumer},
                 R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance q : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered in;
    }
    connect p.out -> c.in;
    chain Flow = q.out -> c.res;
}
)",
                 {kProducer, kConsumer}, kPipeline});

    f.push_back({"V12", "E312",
                 {kProducer, R"(
component Consumer {
    inport in : Msg;
    inport aux : Msg;
    outport res : Res;
    task ConsumeTask {
        reads in;
        reads aux optional;
        writes res;
    }
}
)"},
                 R"(
system Pipeline {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask datatriggered aux;
    }
    connect p.out -> c.in;
}
)",
                 {kProducer, kConsumer}, kPipeline});

    return f;
}

}  // namespace cechain::testing
