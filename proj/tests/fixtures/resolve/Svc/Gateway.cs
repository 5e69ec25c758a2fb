// <auto-generated>
//     Generated web service proxy.
// </auto-generated>
namespace Fx.Svc
{
    public partial class Gateway : SoapHttpClientProtocol
    {
        public string Send(string message)
        {
            return this.Invoke(message);
        }
    }
}
