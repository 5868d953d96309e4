"""Bundled demonstration corpus.

A small but internally consistent city-planning document base centred on
Ningbo, with Beijing and a few other cities for contrast. One deliberate
inconsistency is planted: the provincial pilot review states a 2023 total
for Ningbo (195 Mt CO2) that disagrees with the municipal inventory
(220 Mt CO2) because it uses a narrower accounting boundary. Everything
else is written not to collide.

Values are synthetic and exist to exercise the pipeline, not to describe
any real inventory.
"""
from __future__ import annotations

import json
from pathlib import Path

DEMO_RECORDS: list[dict] = [
    # ------------------------------------------------------------------
    # emission and statistics tables
    # ------------------------------------------------------------------
    {
        "doc_id": "ningbo-total-emissions",
        "title": "Ningbo municipal CO2 inventory, citywide totals",
        "sub_corpus": "Emissions",
        "city": "Ningbo",
        "year_range": [2018, 2023],
        "body": [
            {"city": "Ningbo", "year": 2018, "indicator": "total CO2 emissions", "value": 196, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2019, "indicator": "total CO2 emissions", "value": 203, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2020, "indicator": "total CO2 emissions", "value": 208, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2021, "indicator": "total CO2 emissions", "value": 214, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2022, "indicator": "total CO2 emissions", "value": 218, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "indicator": "total CO2 emissions", "value": 220, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "ningbo-sector-shares",
        "title": "Ningbo 2023 emission shares by sector",
        "sub_corpus": "Emissions",
        "city": "Ningbo",
        "year_range": [2023, 2023],
        "body": [
            {"city": "Ningbo", "year": 2023, "sector": "Industry", "indicator": "Industry share of total CO2 emissions", "value": 65, "unit": "%"},
            {"city": "Ningbo", "year": 2023, "sector": "Transport", "indicator": "Transport share of total CO2 emissions", "value": 18, "unit": "%"},
            {"city": "Ningbo", "year": 2023, "sector": "Buildings", "indicator": "Buildings share of total CO2 emissions", "value": 9, "unit": "%"},
            {"city": "Ningbo", "year": 2023, "sector": "Energy", "indicator": "Energy share of total CO2 emissions", "value": 5, "unit": "%"},
            {"city": "Ningbo", "year": 2023, "sector": "Waste", "indicator": "Waste share of total CO2 emissions", "value": 3, "unit": "%"},
        ],
    },
    {
        "doc_id": "ningbo-sector-absolute",
        "title": "Ningbo 2023 absolute emissions by sector",
        "sub_corpus": "Emissions",
        "city": "Ningbo",
        "year_range": [2023, 2023],
        "body": [
            {"city": "Ningbo", "year": 2023, "sector": "Industry", "indicator": "industrial CO2 emissions", "value": 143, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "sector": "Transport", "indicator": "transport CO2 emissions", "value": 39.6, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "sector": "Buildings", "indicator": "buildings CO2 emissions", "value": 19.8, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "sector": "Energy", "indicator": "energy supply CO2 emissions", "value": 11, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "sector": "Waste", "indicator": "waste treatment CO2 emissions", "value": 6.6, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "ningbo-energy-intensity",
        "title": "Ningbo energy intensity statistics",
        "sub_corpus": "Emissions",
        "city": "Ningbo",
        "body": [
            {"city": "Ningbo", "year": 2022, "indicator": "energy consumption per unit GDP", "value": 0.42, "unit": "tce/10k CNY"},
            {"city": "Ningbo", "year": 2023, "indicator": "energy consumption per unit GDP", "value": 0.405, "unit": "tce/10k CNY"},
        ],
    },
    {
        "doc_id": "ningbo-boundary-definition",
        "title": "Ningbo inventory accounting boundary",
        "sub_corpus": "Emissions",
        "city": "Ningbo",
        "body": (
            "The Ningbo municipal inventory covers the central urban area and all "
            "coastal districts, including port operations attributed to the "
            "transport sector. Bunker fuels sold to international shipping are "
            "reported as a memo item outside the citywide total."
        ),
    },
    {
        "doc_id": "beijing-total-emissions",
        "title": "Beijing citywide CO2 totals",
        "sub_corpus": "Emissions",
        "city": "Beijing",
        "year_range": [2018, 2023],
        "body": [
            {"city": "Beijing", "year": 2018, "indicator": "total CO2 emissions", "value": 155, "unit": "Mt CO2"},
            {"city": "Beijing", "year": 2019, "indicator": "total CO2 emissions", "value": 158, "unit": "Mt CO2"},
            {"city": "Beijing", "year": 2020, "indicator": "total CO2 emissions", "value": 150, "unit": "Mt CO2"},
            {"city": "Beijing", "year": 2021, "indicator": "total CO2 emissions", "value": 152, "unit": "Mt CO2"},
            {"city": "Beijing", "year": 2022, "indicator": "total CO2 emissions", "value": 149, "unit": "Mt CO2"},
            {"city": "Beijing", "year": 2023, "indicator": "total CO2 emissions", "value": 147, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "beijing-sector-shares",
        "title": "Beijing 2023 emission shares by sector",
        "sub_corpus": "Emissions",
        "city": "Beijing",
        "year_range": [2023, 2023],
        "body": [
            {"city": "Beijing", "year": 2023, "sector": "Industry", "indicator": "Industry share of total CO2 emissions", "value": 30, "unit": "%"},
            {"city": "Beijing", "year": 2023, "sector": "Buildings", "indicator": "Buildings share of total CO2 emissions", "value": 28, "unit": "%"},
            {"city": "Beijing", "year": 2023, "sector": "Transport", "indicator": "Transport share of total CO2 emissions", "value": 25, "unit": "%"},
            {"city": "Beijing", "year": 2023, "sector": "Energy", "indicator": "Energy share of total CO2 emissions", "value": 12, "unit": "%"},
            {"city": "Beijing", "year": 2023, "sector": "Waste", "indicator": "Waste share of total CO2 emissions", "value": 5, "unit": "%"},
        ],
    },
    {
        "doc_id": "hangzhou-total-emissions",
        "title": "Hangzhou citywide CO2 totals",
        "sub_corpus": "Emissions",
        "city": "Hangzhou",
        "year_range": [2019, 2023],
        "body": [
            {"city": "Hangzhou", "year": 2019, "indicator": "total CO2 emissions", "value": 98, "unit": "Mt CO2"},
            {"city": "Hangzhou", "year": 2020, "indicator": "total CO2 emissions", "value": 100, "unit": "Mt CO2"},
            {"city": "Hangzhou", "year": 2021, "indicator": "total CO2 emissions", "value": 101, "unit": "Mt CO2"},
            {"city": "Hangzhou", "year": 2022, "indicator": "total CO2 emissions", "value": 101, "unit": "Mt CO2"},
            {"city": "Hangzhou", "year": 2023, "indicator": "total CO2 emissions", "value": 101, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "tangshan-total-emissions",
        "title": "Tangshan citywide CO2 totals",
        "sub_corpus": "Emissions",
        "city": "Tangshan",
        "year_range": [2019, 2023],
        "body": [
            {"city": "Tangshan", "year": 2019, "indicator": "total CO2 emissions", "value": 90, "unit": "Mt CO2"},
            {"city": "Tangshan", "year": 2020, "indicator": "total CO2 emissions", "value": 96, "unit": "Mt CO2"},
            {"city": "Tangshan", "year": 2021, "indicator": "total CO2 emissions", "value": 95, "unit": "Mt CO2"},
            {"city": "Tangshan", "year": 2022, "indicator": "total CO2 emissions", "value": 94, "unit": "Mt CO2"},
            {"city": "Tangshan", "year": 2023, "indicator": "total CO2 emissions", "value": 94.5, "unit": "Mt CO2"},
        ],
    },
    # ------------------------------------------------------------------
    # policy texts
    # ------------------------------------------------------------------
    {
        "doc_id": "ningbo-peaking-plan",
        "title": "Ningbo carbon peaking implementation plan",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "Ningbo plans to reach its carbon emissions peak around 2025, as set "
            "out in the municipal carbon peaking implementation plan. The plan "
            "caps district coal consumption, accelerates industrial "
            "electrification, and requires annual progress reporting to the "
            "municipal government."
        ),
    },
    {
        "doc_id": "ningbo-drc-measures",
        "title": "Ningbo Development and Reform Commission work measures",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "In Ningbo, the Municipal Development and Reform Commission is mainly "
            "responsible for implementing specific measures covering industrial "
            "energy audits, differential power pricing for energy-intensive "
            "enterprises, and mandatory clean production reviews. The commission "
            "also coordinates the peaking roadmap across districts."
        ),
    },
    {
        "doc_id": "ningbo-transport-commission",
        "title": "Ningbo Transport Commission low-carbon measures",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "The Ningbo Municipal Transport Commission takes measures addressing "
            "transport-sector emissions, including freight mode shift to rail, "
            "bus fleet electrification, and shore power enforcement at berths. "
            "Compliance checks run twice a year in the port districts."
        ),
    },
    {
        "doc_id": "ningbo-green-building",
        "title": "Ningbo green building development action",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "The green building development action in Ningbo includes concrete "
            "policy instruments such as mandatory design standards for new "
            "buildings, retrofit subsidies for existing residential blocks, and "
            "public procurement preferences for certified projects."
        ),
    },
    {
        "doc_id": "ningbo-eco-redline",
        "title": "Ningbo ecological conservation zoning",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "In carbon governance the ecological conservation zone functions as a "
            "protected carbon sink, holding coastal wetlands and forest belts "
            "where development is restricted. Ningbo's zoning regulation forbids "
            "new industrial land inside the zone."
        ),
    },
    {
        "doc_id": "ningbo-spatial-plan",
        "title": "Ningbo territorial spatial plan, low-carbon chapter",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "Ningbo's territorial spatial plan directs the central urban area to "
            "prioritize planning measures such as transit corridors, compact "
            "mixed-use districts, and strict caps on new construction land. "
            "Suburban growth is steered toward rail station catchments."
        ),
    },
    {
        "doc_id": "ningbo-market-incentives",
        "title": "Ningbo green finance and market incentives",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "Ningbo extends market incentives including green finance loans at "
            "discounted rates for low-carbon retrofits, municipal subsidies for "
            "rooftop solar, and participation in the provincial carbon trading "
            "pilot for large emitters."
        ),
    },
    {
        "doc_id": "ningbo-monitoring-platform",
        "title": "Ningbo carbon accounting platform notice",
        "sub_corpus": "Policy",
        "city": "Ningbo",
        "body": (
            "Ningbo operates a municipal carbon accounting platform that "
            "consolidates enterprise energy reporting, verifies emission data "
            "annually, and publishes district dashboards for monitoring and "
            "evaluation of peaking progress."
        ),
    },
    {
        "doc_id": "beijing-2025-targets",
        "title": "Beijing 2025 control targets",
        "sub_corpus": "Policy",
        "city": "Beijing",
        "year_range": [2021, 2025],
        "body": (
            "Beijing set control targets for 2025: cutting carbon intensity by "
            "20 % from the 2020 baseline and lifting the renewable energy "
            "consumption share to 25 %.\n"
            "Beijing | 2025 | all | carbon intensity reduction target | 20 %\n"
            "Beijing | 2025 | Energy | renewable energy consumption share target | 25 %"
        ),
    },
    {
        "doc_id": "beijing-peaking-plan",
        "title": "Beijing peaking outlook",
        "sub_corpus": "Policy",
        "city": "Beijing",
        "body": (
            "Beijing expects its citywide emissions to remain on a slow decline "
            "through the decade, having peaked ahead of most peer cities. "
            "Municipal agencies focus on locking in building retrofits and "
            "transport electrification."
        ),
    },
    {
        "doc_id": "wenzhou-policy-note",
        "title": "Wenzhou low-carbon policy note",
        "sub_corpus": "Policy",
        "city": "Wenzhou",
        "body": (
            "Wenzhou's policy note sketches priorities for industrial park "
            "upgrades and rooftop solar, but the city has not yet published a "
            "citywide emission inventory."
        ),
    },
    # ------------------------------------------------------------------
    # case reports
    # ------------------------------------------------------------------
    {
        "doc_id": "ningbo-port-rail-case",
        "title": "Ningbo port freight mode-shift programme",
        "sub_corpus": "Case",
        "city": "Ningbo",
        "body": (
            "The Ningbo port logistics programme shifted containerised freight "
            "from road haulage to rail and water transport, adding rail sidings "
            "at terminal berths and barge services along the coastal corridor. "
            "Terminal operators co-funded the infrastructure upgrades with the "
            "municipal transport fund."
        ),
    },
    {
        "doc_id": "ningbo-lowcarbon-pilot-review",
        "title": "Provincial low-carbon pilot review of Ningbo",
        "sub_corpus": "Case",
        "city": "Ningbo",
        "body": (
            "The provincial low-carbon pilot review estimated citywide emissions "
            "using the provincial accounting boundary, which excludes port "
            "bunkering and inter-city freight.\n"
            "Ningbo | 2023 | all | total CO2 emissions | 195 Mt CO2"
        ),
    },
    {
        "doc_id": "suzhou-retrofit-case",
        "title": "Suzhou industrial park retrofit case",
        "sub_corpus": "Case",
        "city": "Suzhou",
        "body": (
            "Suzhou's industrial park retrofitted waste heat recovery across "
            "chemical plants and paired new grid connections with rooftop solar "
            "on factory buildings, coordinated through the park's energy "
            "management contract."
        ),
    },
    {
        "doc_id": "shenzhen-ev-case",
        "title": "Shenzhen fleet electrification case",
        "sub_corpus": "Case",
        "city": "Shenzhen",
        "body": (
            "Shenzhen electrified its public bus and taxi fleets, installing "
            "depot charging infrastructure and scheduling overnight charging to "
            "absorb off-peak power. The programme is cited widely as a transport "
            "electrification template."
        ),
    },
    {
        "doc_id": "xiamen-shore-power-case",
        "title": "Xiamen shore power enforcement case",
        "sub_corpus": "Case",
        "city": "Xiamen",
        "body": (
            "Xiamen required berthed vessels to connect to shore power, cutting "
            "auxiliary engine fuel burn in the harbour district and tightening "
            "enforcement through berth allocation rules."
        ),
    },
    # ------------------------------------------------------------------
    # academic evidence
    # ------------------------------------------------------------------
    {
        "doc_id": "solar-pv-study",
        "title": "Distributed solar PV deployment patterns",
        "sub_corpus": "Academic",
        "body": (
            "Distributed solar PV is mainly applied in the industry and energy "
            "supply sectors of coastal cities, offsetting daytime electricity "
            "demand in manufacturing parks. Rooftop installations on public "
            "buildings contribute a smaller share."
        ),
    },
    {
        "doc_id": "ev-cobenefit-study",
        "title": "Co-benefits of electric vehicle promotion",
        "sub_corpus": "Academic",
        "body": (
            "Besides emission reduction, EV promotion in urban transport can "
            "bring co-benefits including cleaner roadside air, lower traffic "
            "noise, and reduced oil dependence. The co-benefits concentrate "
            "along dense bus corridors."
        ),
    },
    {
        "doc_id": "indicator-definitions",
        "title": "Common energy and carbon indicators",
        "sub_corpus": "Academic",
        "body": (
            "The indicator energy consumption per unit GDP measures the goal of "
            "energy efficiency: how much energy the economy uses for each unit "
            "of output. Provincial assessments track it alongside carbon "
            "intensity."
        ),
    },
    {
        "doc_id": "urban-form-review",
        "title": "Urban form and low-carbon spatial planning",
        "sub_corpus": "Academic",
        "body": (
            "Compact urban form with mixed land use shortens trips, and transit "
            "corridors anchor low-carbon spatial planning in coastal cities. "
            "Land use caps near wetlands preserve carbon sinks while limiting "
            "sprawl."
        ),
    },
    {
        "doc_id": "carbon-market-review",
        "title": "Carbon markets and green finance review",
        "sub_corpus": "Academic",
        "body": (
            "Reviews of emissions trading pilots find that carbon pricing with "
            "benchmarked allowances drives abatement mainly in power and "
            "industry, while green finance instruments channel retrofit capital "
            "toward market-ready projects."
        ),
    },
    {
        "doc_id": "mrv-methods-review",
        "title": "Monitoring and verification methods for city inventories",
        "sub_corpus": "Academic",
        "body": (
            "Monitoring, reporting and verification for city inventories relies "
            "on continuous data platforms and annual carbon accounting cycles. "
            "Evaluation audits compare reported energy data against grid and "
            "fuel sales records."
        ),
    },
    {
        "doc_id": "peaking-pathway-study",
        "title": "Peaking pathways of eastern port cities",
        "sub_corpus": "Academic",
        "body": (
            "Studies of eastern port cities suggest industrial electrification "
            "and freight mode shift dominate feasible peaking pathways, with "
            "port equipment electrification a close second."
        ),
    },
    # ------------------------------------------------------------------
    # additional contrast cities and background material
    # ------------------------------------------------------------------
    {
        "doc_id": "guangzhou-total-emissions",
        "title": "Guangzhou citywide CO2 totals",
        "sub_corpus": "Emissions",
        "city": "Guangzhou",
        "year_range": [2019, 2023],
        "body": [
            {"city": "Guangzhou", "year": 2019, "indicator": "total CO2 emissions", "value": 118, "unit": "Mt CO2"},
            {"city": "Guangzhou", "year": 2020, "indicator": "total CO2 emissions", "value": 121, "unit": "Mt CO2"},
            {"city": "Guangzhou", "year": 2021, "indicator": "total CO2 emissions", "value": 120, "unit": "Mt CO2"},
            {"city": "Guangzhou", "year": 2022, "indicator": "total CO2 emissions", "value": 117, "unit": "Mt CO2"},
            {"city": "Guangzhou", "year": 2023, "indicator": "total CO2 emissions", "value": 112, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "guangzhou-sector-shares",
        "title": "Guangzhou 2023 emission shares by sector",
        "sub_corpus": "Emissions",
        "city": "Guangzhou",
        "year_range": [2023, 2023],
        "body": [
            {"city": "Guangzhou", "year": 2023, "sector": "Industry", "indicator": "Industry share of total CO2 emissions", "value": 38, "unit": "%"},
            {"city": "Guangzhou", "year": 2023, "sector": "Energy", "indicator": "Energy share of total CO2 emissions", "value": 24, "unit": "%"},
            {"city": "Guangzhou", "year": 2023, "sector": "Transport", "indicator": "Transport share of total CO2 emissions", "value": 20, "unit": "%"},
            {"city": "Guangzhou", "year": 2023, "sector": "Buildings", "indicator": "Buildings share of total CO2 emissions", "value": 14, "unit": "%"},
            {"city": "Guangzhou", "year": 2023, "sector": "Waste", "indicator": "Waste share of total CO2 emissions", "value": 4, "unit": "%"},
        ],
    },
    {
        "doc_id": "qingdao-total-emissions",
        "title": "Qingdao citywide CO2 totals",
        "sub_corpus": "Emissions",
        "city": "Qingdao",
        "year_range": [2019, 2023],
        "body": [
            {"city": "Qingdao", "year": 2019, "indicator": "total CO2 emissions", "value": 70, "unit": "Mt CO2"},
            {"city": "Qingdao", "year": 2020, "indicator": "total CO2 emissions", "value": 73, "unit": "Mt CO2"},
            {"city": "Qingdao", "year": 2021, "indicator": "total CO2 emissions", "value": 76, "unit": "Mt CO2"},
            {"city": "Qingdao", "year": 2022, "indicator": "total CO2 emissions", "value": 80, "unit": "Mt CO2"},
            {"city": "Qingdao", "year": 2023, "indicator": "total CO2 emissions", "value": 84, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "jinan-total-emissions",
        "title": "Jinan citywide CO2 totals",
        "sub_corpus": "Emissions",
        "city": "Jinan",
        "year_range": [2021, 2023],
        "body": [
            {"city": "Jinan", "year": 2021, "indicator": "total CO2 emissions", "value": 60, "unit": "Mt CO2"},
            {"city": "Jinan", "year": 2022, "indicator": "total CO2 emissions", "value": 63, "unit": "Mt CO2"},
            {"city": "Jinan", "year": 2023, "indicator": "total CO2 emissions", "value": 66, "unit": "Mt CO2"},
        ],
    },
    {
        "doc_id": "qingdao-heating-policy",
        "title": "Qingdao clean heating conversion programme",
        "sub_corpus": "Policy",
        "city": "Qingdao",
        "body": (
            "Qingdao converts coastal district heating from coal boilers to "
            "seawater-source heat pumps and industrial waste heat. Heating "
            "companies must file conversion schedules with the municipal "
            "utility bureau and retire small boilers on a published timetable."
        ),
    },
    {
        "doc_id": "tangshan-steel-capacity-policy",
        "title": "Tangshan steel capacity adjustment directive",
        "sub_corpus": "Policy",
        "city": "Tangshan",
        "body": (
            "Tangshan caps crude steel capacity through swap rules: new blast "
            "furnaces require retiring larger existing capacity. Coke oven gas "
            "recovery and sinter plant heat recovery are mandatory for permit "
            "renewal."
        ),
    },
    {
        "doc_id": "qingdao-district-heating-case",
        "title": "Qingdao seawater heat pump retrofit outcome",
        "sub_corpus": "Case",
        "city": "Qingdao",
        "body": (
            "A harbourside district replaced its coal heating plant with "
            "seawater-source heat pumps. The retrofit kept indoor comfort "
            "stable through winter while ending local coal deliveries, and "
            "the pump hall now runs unattended overnight."
        ),
    },
    {
        "doc_id": "wuhan-cement-kiln-case",
        "title": "Wuhan cement kiln co-processing trial",
        "sub_corpus": "Case",
        "city": "Wuhan",
        "body": (
            "A Wuhan cement plant co-processes sorted municipal refuse in its "
            "kiln and recovers waste heat for drying raw meal. The trial cut "
            "coal use per clinker batch and diverted refuse from the landfill "
            "without new disposal capacity."
        ),
    },
    {
        "doc_id": "industrial-efficiency-benchmark-review",
        "title": "Efficiency benchmarking in heavy industry",
        "sub_corpus": "Academic",
        "body": (
            "Benchmarking reviews across kilns, furnaces, and compressors find "
            "wide efficiency spreads within the same product class. Publishing "
            "benchmark curves and tying permits to the top quartile moves "
            "laggards faster than plant-by-plant audits."
        ),
    },
]


def demo_records() -> list[dict]:
    """A deep-enough copy that callers can mutate records safely."""
    return json.loads(json.dumps(DEMO_RECORDS))


def write_corpus(path: str | Path) -> Path:
    """Write the demo corpus as one-record-per-line interchange."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for record in DEMO_RECORDS:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return path
