import init, { cohomology_table, check, classify } from "./pkg/instanton_lab_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, msg) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = msg;
  el.append(p);
}

function renderTable(t) {
  const n = t.rows.length ? t.rows[0].h.length : 0;
  const head = ["t", ...Array.from({ length: n }, (_, i) => "h" + i)];
  const table = document.createElement("table");
  const tr = table.insertRow();
  for (const h of head) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.append(th);
  }
  for (const row of t.rows) {
    const r = table.insertRow();
    r.insertCell().textContent = row.t;
    for (const d of row.h) r.insertCell().textContent = d;
  }
  return table;
}

function show(el, json, render) {
  const v = JSON.parse(json);
  if (v.error) return fail(el, v.error);
  el.innerHTML = "";
  render(v);
}

await init();

$("tgo").onclick = () => {
  const out = $("tout");
  show(out, cohomology_table($("tv").value, $("tb").value, +$("tmin").value, +$("tmax").value), (t) => {
    const cap = document.createElement("p");
    cap.textContent = `${t.variety}, rank ${t.rank}`;
    out.append(cap, renderTable(t));
  });
};

$("cgo").onclick = () => {
  const out = $("cout");
  show(out, check($("cv").value, $("cb").value), ({ table, verdict }) => {
    const p = document.createElement("p");
    const pairs = verdict.admissible.map((a) => `δ=${a.defect}, q=${a.quantum}`);
    p.textContent = pairs.length ? `instanton: ${pairs.join("; ")}` : "not an instanton";
    const notes = document.createElement("pre");
    notes.textContent = verdict.notes.join("\n");
    out.append(p, renderTable(table));
    if (verdict.notes.length) out.append(notes);
  });
};

$("kgo").onclick = () => {
  const out = $("kout");
  show(out, classify($("kind").value, +$("box").value, +$("defect").value), (r) => {
    const p = document.createElement("p");
    p.textContent = `agreement: ${r.agreement}; expected ${r.expected_description}`;
    const pre = document.createElement("pre");
    pre.textContent = r.found.map((e) => `O(${e.coords.join(",")})  q=${e.quantum}${e.boundary ? "  (a = 0)" : ""}`).join("\n") || "nothing found";
    out.append(p, pre);
  });
};
