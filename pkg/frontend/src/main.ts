import { FriaApi } from "./api";
import { WizardStore } from "./state";
import { renderWizard } from "./wizard";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8000";

const store = new WizardStore(new FriaApi(apiBase));
const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
renderWizard(root, store);

const recordId = params.get("record");
if (recordId) void store.open(recordId);
