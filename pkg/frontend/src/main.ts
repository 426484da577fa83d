import { ServiceClient } from "./api.js";
import { Notebook } from "./state.js";
import { renderNotebook } from "./ui.js";

// The service origin can be overridden with ?service=http://host:port when
// the page is not served by the service itself.
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? window.location.origin;

const root = document.getElementById("notebook");
if (root === null) throw new Error("missing #notebook element");

const client = new ServiceClient(baseUrl);
const notebook = new Notebook(client, () => renderNotebook(root, notebook));
renderNotebook(root, notebook);
