//------------------------------------------------------------------------------
// <auto-generated>
//     This code was generated by a tool.
// </auto-generated>
//------------------------------------------------------------------------------
using System.Web.Services.Protocols;

namespace Shop.Proxies.Payment
{
    [System.Web.Services.WebServiceBindingAttribute(Name = "PaymentGatewaySoap")]
    public partial class PaymentGatewayProxy : SoapHttpClientProtocol
    {
        public string Charge(int customerId, decimal amount)
        {
            object[] results = this.Invoke("Charge", new object[] { customerId, amount });
            return (string)results[0];
        }
    }
}
